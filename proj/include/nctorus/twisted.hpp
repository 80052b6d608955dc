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
#include <complex>
#include <cstddef>
#include <vector>

#include "nctorus/detail/parallel.hpp"
#include "nctorus/error.hpp"
#include "nctorus/fft.hpp"
#include "nctorus/grid.hpp"

namespace nctorus {

namespace detail {

inline void require_conv_grids(const GridFunction2D &a, const GridFunction2D &b) {
    if (!a.same_grid(b))
        throw input_error("grid", "convolution operands must share a grid");
}

/// Zero-padded transforms of every row a(., rho) of a, length 2 n_t.
inline std::vector<std::vector<complex>> padded_column_ffts(const GridFunction2D &a) {
    const std::size_t nt = a.n_t(), ns = a.n_s();
    std::vector<std::vector<complex>> out(ns);
    parallel_for(ns, [&](std::size_t rho) {
        std::vector<complex> col(2 * nt);
        for (std::size_t m = 0; m < nt; ++m)
            col[m] = a(m, rho);
        out[rho] = fft(col);
    });
    return out;
}

} // namespace detail

/// (a *_hbar b)(t, s) = int int a(t - u, s - v) b(u, v) e^{i(s - v) u hbar} du dv
/// by the trapezoidal rule, with a and b zero off the grid.
///
/// For an output column s_p and a v-sample r the kernel
/// K(u_j) = b(u_j, v_r) e^{i (s_p - v_r) u_j hbar} turns the u-integral into a
/// linear convolution in t, done by zero-padded FFT. The sum over r is
/// accumulated in the Fourier domain; one inverse transform per column.
inline GridFunction2D twisted_conv(const GridFunction2D &a, const GridFunction2D &b, double hbar) {
    detail::require_conv_grids(a, b);
    const std::size_t nt = a.n_t(), ns = a.n_s();
    const std::size_t m2 = 2 * nt;
    const double w = a.dt() * a.ds();
    const auto half_s = static_cast<std::ptrdiff_t>(ns / 2);
    auto afft = detail::padded_column_ffts(a);

    GridFunction2D out = a.zeros_like();
    std::vector<std::vector<complex>> columns(ns);
    detail::parallel_for(ns, [&](std::size_t p) {
        std::vector<complex> acc(m2);
        std::vector<complex> kern(m2);
        for (std::size_t r = 0; r < ns; ++r) {
            std::ptrdiff_t rho = static_cast<std::ptrdiff_t>(p) - static_cast<std::ptrdiff_t>(r) +
                                 half_s;
            if (rho < 0 || rho >= static_cast<std::ptrdiff_t>(ns))
                continue;
            const double sv = a.s(static_cast<std::size_t>(rho));
            bool any = false;
            for (std::size_t j = 0; j < nt; ++j) {
                complex bj = b(j, r);
                kern[j] = bj == complex{} ? complex{} : bj * std::polar(1.0, sv * a.t(j) * hbar);
                any = any || bj != complex{};
            }
            if (!any)
                continue;
            std::fill(kern.begin() + static_cast<std::ptrdiff_t>(nt), kern.end(), complex{});
            auto kf = fft(kern);
            const auto &af = afft[static_cast<std::size_t>(rho)];
            for (std::size_t k = 0; k < m2; ++k)
                acc[k] += af[k] * kf[k];
        }
        auto y = ifft(acc);
        columns[p].resize(nt);
        for (std::size_t i = 0; i < nt; ++i)
            columns[p][i] = y[i + nt / 2] * w;
    });
    for (std::size_t p = 0; p < ns; ++p)
        for (std::size_t i = 0; i < nt; ++i)
            out(i, p) = columns[p][i];
    return out;
}

/// (a *^_hbar b)(x) = int a(x - y) b(y) e^{-(i hbar / 2) omega(x, y)} dy with
/// omega(x, y) = x_1 y_2 - y_1 x_2, by the trapezoidal rule.
///
/// The phase splits as e^{-i hbar t v / 2} e^{i hbar u s / 2}; the second
/// factor goes into the kernel and the first is applied after each inverse
/// transform.
inline GridFunction2D other_twisted_conv(const GridFunction2D &a, const GridFunction2D &b,
                                         double hbar) {
    detail::require_conv_grids(a, b);
    const std::size_t nt = a.n_t(), ns = a.n_s();
    const std::size_t m2 = 2 * nt;
    const double w = a.dt() * a.ds();
    const auto half_s = static_cast<std::ptrdiff_t>(ns / 2);
    auto afft = detail::padded_column_ffts(a);

    GridFunction2D out = a.zeros_like();
    std::vector<std::vector<complex>> columns(ns);
    detail::parallel_for(ns, [&](std::size_t p) {
        std::vector<complex> col(nt);
        std::vector<complex> kern(m2);
        std::vector<complex> prod(m2);
        const double s = a.s(p);
        for (std::size_t r = 0; r < ns; ++r) {
            std::ptrdiff_t rho = static_cast<std::ptrdiff_t>(p) - static_cast<std::ptrdiff_t>(r) +
                                 half_s;
            if (rho < 0 || rho >= static_cast<std::ptrdiff_t>(ns))
                continue;
            bool any = false;
            for (std::size_t j = 0; j < nt; ++j) {
                complex bj = b(j, r);
                kern[j] = bj == complex{} ? complex{}
                                          : bj * std::polar(1.0, 0.5 * hbar * a.t(j) * s);
                any = any || bj != complex{};
            }
            if (!any)
                continue;
            std::fill(kern.begin() + static_cast<std::ptrdiff_t>(nt), kern.end(), complex{});
            auto kf = fft(kern);
            const auto &af = afft[static_cast<std::size_t>(rho)];
            for (std::size_t k = 0; k < m2; ++k)
                prod[k] = af[k] * kf[k];
            auto y = ifft(prod);
            const double v = a.s(r);
            for (std::size_t i = 0; i < nt; ++i)
                col[i] += y[i + nt / 2] * std::polar(1.0, -0.5 * hbar * a.t(i) * v);
        }
        columns[p].resize(nt);
        for (std::size_t i = 0; i < nt; ++i)
            columns[p][i] = col[i] * w;
    });
    for (std::size_t p = 0; p < ns; ++p)
        for (std::size_t i = 0; i < nt; ++i)
            out(i, p) = columns[p][i];
    return out;
}

enum class GaugeDirection { forward, inverse };

/// Pointwise multiplication by e^{-(i hbar / 2) t s} (forward) or its
/// conjugate (inverse). Forward carries *_hbar to *^_hbar:
/// forward(a *_hbar b) = forward(a) *^_hbar forward(b).
inline GridFunction2D gauge_iso(const GridFunction2D &a, double hbar, GaugeDirection dir) {
    const double sign = dir == GaugeDirection::forward ? -1.0 : 1.0;
    GridFunction2D out = a;
    for (std::size_t i = 0; i < a.n_t(); ++i)
        for (std::size_t p = 0; p < a.n_s(); ++p)
            out(i, p) *= std::polar(1.0, sign * 0.5 * hbar * a.t(i) * a.s(p));
    return out;
}

/// An element (x, alpha) of the Heisenberg group R^2 x S^1 with
/// (x, alpha)(y, beta) = (x + y, alpha beta e^{(i hbar / 2) omega(x, y)}).
struct HeisenbergElement {
    double x1 = 0.0;
    double x2 = 0.0;
    complex alpha{1.0, 0.0};
};

inline HeisenbergElement group_mul(const HeisenbergElement &g, const HeisenbergElement &h,
                                   double hbar) {
    double omega = g.x1 * h.x2 - h.x1 * g.x2;
    return {g.x1 + h.x1, g.x2 + h.x2, g.alpha * h.alpha * std::polar(1.0, 0.5 * hbar * omega)};
}

inline HeisenbergElement group_inv(const HeisenbergElement &g) {
    return {-g.x1, -g.x2, std::conj(g.alpha)};
}

/// Group convolution (a~ * b~)(g) = int a~(g h^{-1}) b~(h) dh of the lifts
/// a~(x, alpha) = a(x) alpha, evaluated at alpha = 1 by a direct sum over the
/// grid. The integrand is independent of the circle coordinate of h, so the
/// normalized circle integral contributes 1.
inline GridFunction2D heisenberg_group_conv(const GridFunction2D &a, const GridFunction2D &b,
                                            double hbar) {
    detail::require_conv_grids(a, b);
    const std::size_t nt = a.n_t(), ns = a.n_s();
    const auto ht = static_cast<std::ptrdiff_t>(nt / 2);
    const auto hs = static_cast<std::ptrdiff_t>(ns / 2);
    const double w = a.dt() * a.ds();
    GridFunction2D out = a.zeros_like();
    std::vector<std::vector<complex>> rows(nt);
    detail::parallel_for(nt, [&](std::size_t i) {
        rows[i].assign(ns, complex{});
        for (std::size_t p = 0; p < ns; ++p) {
            const HeisenbergElement g{a.t(i), a.s(p)};
            complex acc{};
            for (std::size_t j = 0; j < nt; ++j) {
                std::ptrdiff_t ia = static_cast<std::ptrdiff_t>(i) - static_cast<std::ptrdiff_t>(j) + ht;
                if (ia < 0 || ia >= static_cast<std::ptrdiff_t>(nt))
                    continue;
                for (std::size_t r = 0; r < ns; ++r) {
                    complex bv = b(j, r);
                    if (bv == complex{})
                        continue;
                    std::ptrdiff_t pa = static_cast<std::ptrdiff_t>(p) - static_cast<std::ptrdiff_t>(r) + hs;
                    if (pa < 0 || pa >= static_cast<std::ptrdiff_t>(ns))
                        continue;
                    const HeisenbergElement h{a.t(j), a.s(r)};
                    HeisenbergElement gh = group_mul(g, group_inv(h), hbar);
                    acc += a(static_cast<std::size_t>(ia), static_cast<std::size_t>(pa)) *
                           gh.alpha * bv * h.alpha;
                }
            }
            rows[i][p] = acc * w;
        }
    });
    for (std::size_t i = 0; i < nt; ++i)
        for (std::size_t p = 0; p < ns; ++p)
            out(i, p) = rows[i][p];
    return out;
}

/// a *^_hbar b computed from the hbar = 1 product through the group
/// isomorphism T(x_1, x_2) = (hbar x_1, x_2):
///   (a *^_hbar b)(x) = (1 / hbar) (A *^_1 B)(T x),  A = a o T^{-1}, B = b o T^{-1}.
/// On the grid, A and B carry the samples of a and b on the t-axis stretched
/// by hbar. Requires hbar > 0.
inline GridFunction2D hbar_rescaled_conv(const GridFunction2D &a, const GridFunction2D &b,
                                         double hbar) {
    detail::require_conv_grids(a, b);
    if (!(hbar > 0.0) || !std::isfinite(hbar))
        throw input_error("hbar", "rescaling needs hbar > 0");
    auto stretch = [&](const GridFunction2D &f) {
        return GridFunction2D(f.half_extent_t() * hbar, f.half_extent_s(), f.n_t(), f.n_s(),
                              f.values());
    };
    GridFunction2D c1 = other_twisted_conv(stretch(a), stretch(b), 1.0);
    GridFunction2D out(a.half_extent_t(), a.half_extent_s(), a.n_t(), a.n_s(), c1.values());
    out *= 1.0 / hbar;
    return out;
}

} // namespace nctorus
