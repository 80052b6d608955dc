/* Copyright 2026 The nctorus Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License. */

#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "nctorus/error.hpp"
#include "nctorus/fft.hpp"
#include "nctorus/grid.hpp"
#include "nctorus/poly_symbol.hpp"
#include "nctorus/twisted.hpp"

namespace nctorus {

/// The reciprocal grid of f: spacing pi / L and half extent n pi / (2L) per
/// axis, so that the sample products x_j y_k carry the DFT kernel.
inline GridFunction2D reciprocal_grid(const GridFunction2D &f) {
    const double pi = std::numbers::pi;
    return GridFunction2D(static_cast<double>(f.n_t()) * pi / (2.0 * f.half_extent_t()),
                          static_cast<double>(f.n_s()) * pi / (2.0 * f.half_extent_s()),
                          f.n_t(), f.n_s());
}

namespace detail {

/// Grid Fourier transform between f's grid and `target`, with kernel
/// e^{sign i <x, y>}: out_k = scale * sum_j e^{sign i x_j y_k} in_j.
/// Uses x_j y_k = x0 y0 + x0 k dy + y0 j dx + 2 pi jk / n.
inline GridFunction2D grid_dft(const GridFunction2D &in, const GridFunction2D &target, int sign,
                               double scale) {
    const std::size_t nt = in.n_t(), ns = in.n_s();
    const double x0t = in.t(0), x0s = in.s(0), y0t = target.t(0), y0s = target.s(0);
    const double dxt = in.dt(), dxs = in.ds(), dyt = target.dt(), dys = target.ds();
    std::vector<complex> pre_t(nt), pre_s(ns), post_t(nt), post_s(ns);
    for (std::size_t j = 0; j < nt; ++j) {
        pre_t[j] = std::polar(1.0, sign * y0t * static_cast<double>(j) * dxt);
        post_t[j] = std::polar(1.0, sign * x0t * static_cast<double>(j) * dyt);
    }
    for (std::size_t j = 0; j < ns; ++j) {
        pre_s[j] = std::polar(1.0, sign * y0s * static_cast<double>(j) * dxs);
        post_s[j] = std::polar(1.0, sign * x0s * static_cast<double>(j) * dys);
    }
    std::vector<complex> buf(nt * ns);
    for (std::size_t i = 0; i < nt; ++i)
        for (std::size_t p = 0; p < ns; ++p)
            buf[i * ns + p] = in(i, p) * pre_t[i] * pre_s[p];
    auto y = sign < 0 ? fft2(buf, static_cast<int>(nt), static_cast<int>(ns))
                      : detail::run_dft(buf, static_cast<int>(nt), static_cast<int>(ns),
                                        FFTW_BACKWARD);
    const complex c = scale * std::polar(1.0, sign * (x0t * y0t + x0s * y0s));
    GridFunction2D out = target.zeros_like();
    for (std::size_t i = 0; i < nt; ++i)
        for (std::size_t p = 0; p < ns; ++p)
            out(i, p) = c * post_t[i] * post_s[p] * y[i * ns + p];
    return out;
}

} // namespace detail

/// (Ff)(y) = int e^{-i <x, y>} f(x) dx, sampled on the reciprocal grid.
inline GridFunction2D fourier_transform_2d(const GridFunction2D &f) {
    return detail::grid_dft(f, reciprocal_grid(f), -1, f.dt() * f.ds());
}

/// (F^{-1} F)(x) = (2 pi)^{-2} int e^{i <x, y>} F(y) dy, sampled on `grid`
/// (whose reciprocal grid must be F's grid).
inline GridFunction2D inverse_fourier_transform_2d(const GridFunction2D &F,
                                                   const GridFunction2D &grid) {
    if (!reciprocal_grid(grid).same_grid(F))
        throw input_error("grid", "spectrum does not live on the reciprocal grid");
    const double two_pi = 2.0 * std::numbers::pi;
    return detail::grid_dft(F, grid.zeros_like(), +1, F.dt() * F.ds() / (two_pi * two_pi));
}

/// Route A: F^{-1}((Ff) *^_hbar (Fg)).
inline GridFunction2D bridge_route_a(const GridFunction2D &f, const GridFunction2D &g,
                                     double hbar) {
    f.require_same_grid(g);
    auto Ff = fourier_transform_2d(f);
    auto Fg = fourier_transform_2d(g);
    return inverse_fourier_transform_2d(other_twisted_conv(Ff, Fg, hbar), f);
}

/// Route B: (2 pi)^2 sum_{k <= K} hbar^k (-i)^k / (2^k k!)
///   sum_j C(k, j) (-1)^j (d_1^j d_2^{k-j} f)(d_1^{k-j} d_2^j g),
/// with spectral derivatives.
inline GridFunction2D bridge_route_b(const GridFunction2D &f, const GridFunction2D &g,
                                     double hbar, int K) {
    f.require_same_grid(g);
    if (K < 0)
        throw input_error("order", "K must be non-negative");
    const double two_pi = 2.0 * std::numbers::pi;
    GridFunction2D out = f.zeros_like();
    complex hk = 1.0;
    for (int k = 0; k <= K; ++k) {
        const complex pref = hk * moyal_prefactor(k, 2).to_complex() * (two_pi * two_pi);
        double binom = 1.0;
        for (int j = 0; j <= k; ++j) {
            auto df = spectral_partial(f, j, k - j);
            auto dg = spectral_partial(g, k - j, j);
            const complex w = pref * binom * ((j % 2 == 0) ? 1.0 : -1.0);
            for (std::size_t i = 0; i < out.values().size(); ++i)
                out.values()[i] += w * df.values()[i] * dg.values()[i];
            binom = binom * (k - j) / (j + 1);
        }
        hk *= hbar;
    }
    return out;
}

/// ||A - B|| / ||A|| for the two routes above.
inline double fourier_bridge_error(const GridFunction2D &f, const GridFunction2D &g, double hbar,
                                   int K) {
    return relative_l2(bridge_route_b(f, g, hbar, K), bridge_route_a(f, g, hbar));
}

struct SmoothnessProbe {
    GridFunction2D derivative; ///< Richardson estimate of d/dhbar (a *_hbar b)
    double residual_coarse = 0.0; ///< ||D(delta) - D(delta/2)||
    double residual_fine = 0.0;   ///< ||D(delta/2) - D(delta/4)||
    double ratio = 0.0;           ///< residual_coarse / residual_fine, about 4 for C^3 data
};

/// Central differences D(h) of hbar -> a *_hbar b at hbar0 for h = delta,
/// delta/2, delta/4.
inline SmoothnessProbe hbar_smoothness_probe(const GridFunction2D &a, const GridFunction2D &b,
                                             double hbar0, double delta) {
    if (!(delta > 0.0) || !std::isfinite(delta))
        throw input_error("delta", "must be positive");
    auto D = [&](double h) {
        GridFunction2D d = twisted_conv(a, b, hbar0 + h) - twisted_conv(a, b, hbar0 - h);
        d *= 1.0 / (2.0 * h);
        return d;
    };
    auto d1 = D(delta), d2 = D(delta / 2), d4 = D(delta / 4);
    SmoothnessProbe r{d2};
    r.residual_coarse = l2_norm(d1 - d2);
    r.residual_fine = l2_norm(d2 - d4);
    r.ratio = r.residual_fine > 0.0 ? r.residual_coarse / r.residual_fine : 0.0;
    r.derivative *= 4.0 / 3.0;
    GridFunction2D c = d1;
    c *= -1.0 / 3.0;
    r.derivative += c;
    return r;
}

} // namespace nctorus
