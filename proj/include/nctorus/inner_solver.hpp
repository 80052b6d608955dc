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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "nctorus/detail/parallel.hpp"
#include "nctorus/error.hpp"
#include "nctorus/fft.hpp"
#include "nctorus/grid.hpp"

namespace nctorus {

/// Coefficient densities of D(Q) and D(P) in the e^{itQ} e^{isP} expansion.
struct DerivationData {
    GridFunction2D a_Q;
    GridFunction2D a_P;
    double hbar = 1.0;
};

struct InnerSolveOptions {
    double compatibility_tol = 1e-8; ///< relative, see compatibility_residual
    double overlap_tol = 1e-6;       ///< relative to max |b|
    int cutoff_cells = 2;
};

struct InnerGenerator {
    GridFunction2D b;
    double compatibility_residual = 0.0;
    double overlap_residual = 0.0;
};

/// max |a_Q t + a_P s| / max (|a_Q t| + |a_P s|); zero for zero data.
inline double compatibility_residual(const DerivationData &d) {
    const auto &aq = d.a_Q;
    const auto &ap = d.a_P;
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < aq.n_t(); ++i) {
        for (std::size_t p = 0; p < aq.n_s(); ++p) {
            complex x = aq(i, p) * aq.t(i);
            complex y = ap(i, p) * aq.s(p);
            num = std::max(num, std::abs(x + y));
            den = std::max(den, std::abs(x) + std::abs(y));
        }
    }
    return den > 0.0 ? num / den : 0.0;
}

namespace detail {

/// Evaluates the trigonometric interpolant of grid data at arbitrary points.
class trig_interpolant {
public:
    explicit trig_interpolant(const GridFunction2D &f)
        : nt_(f.n_t()), ns_(f.n_s()), t0_(f.t(0)), s0_(f.s(0)), dt_(f.dt()), ds_(f.ds()),
          coeffs_(fft2(f.values(), static_cast<int>(nt_), static_cast<int>(ns_))) {
        const double scale = 1.0 / (static_cast<double>(nt_) * static_cast<double>(ns_));
        for (auto &c : coeffs_)
            c *= scale;
    }

    complex operator()(double t, double s) const {
        auto basis = [](std::size_t n, double dx, double x) {
            std::vector<complex> e(n);
            for (std::size_t k = 0; k < n; ++k) {
                double w = wavenumber(k, n, dx);
                e[k] = (k == n / 2) ? complex(std::cos(w * x), 0.0) : std::polar(1.0, w * x);
            }
            return e;
        };
        auto et = basis(nt_, dt_, t - t0_);
        auto es = basis(ns_, ds_, s - s0_);
        complex acc{};
        for (std::size_t k = 0; k < nt_; ++k) {
            complex row{};
            const complex *c = &coeffs_[k * ns_];
            for (std::size_t m = 0; m < ns_; ++m)
                row += c[m] * es[m];
            acc += et[k] * row;
        }
        return acc;
    }

private:
    std::size_t nt_, ns_;
    double t0_, s0_, dt_, ds_;
    std::vector<complex> coeffs_;
};

} // namespace detail

/// Recovers b with a_Q = b s hbar and a_P = -b t hbar.
///
/// Away from the axes b is read off by division (the larger divisor wins, and
/// both branches must agree where both apply). Inside the cutoff square
/// around the origin b comes from the radial Poincare integral along the ray
/// through the grid point x to the grid point m x, where b is already known:
///   |x|^2 b(x) = |m x|^2 b(m x) - (1 / hbar) int_{|x|}^{m |x|} r g(r x / |x|) dr,
///   g = d_s a_Q - d_t a_P,
/// with g evaluated by trigonometric interpolation. The value at the origin
/// is the free central constant; continuity fixes it to g(0) / (2 hbar).
inline InnerGenerator solve_inner_generator(const DerivationData &d,
                                            const InnerSolveOptions &opt = {}) {
    if (d.hbar == 0.0 || !std::isfinite(d.hbar))
        throw input_error("hbar", "must be nonzero");
    d.a_Q.require_same_grid(d.a_P);
    InnerGenerator out{d.a_Q.zeros_like()};
    out.compatibility_residual = compatibility_residual(d);
    if (out.compatibility_residual > opt.compatibility_tol)
        throw tolerance_error("compatibility -a_Q t = a_P s violated; data is not a derivation",
                              out.compatibility_residual);

    const auto &aq = d.a_Q;
    const auto &ap = d.a_P;
    auto &b = out.b;
    const std::size_t nt = aq.n_t(), ns = aq.n_s();
    const auto it0 = static_cast<std::ptrdiff_t>(nt / 2);
    const auto ip0 = static_cast<std::ptrdiff_t>(ns / 2);
    const std::ptrdiff_t cut = opt.cutoff_cells;

    double bmax = 0.0, overlap = 0.0;
    std::vector<std::pair<std::size_t, std::size_t>> inner;
    for (std::size_t i = 0; i < nt; ++i) {
        for (std::size_t p = 0; p < ns; ++p) {
            bool s_ok = std::abs(static_cast<std::ptrdiff_t>(p) - ip0) >= cut;
            bool t_ok = std::abs(static_cast<std::ptrdiff_t>(i) - it0) >= cut;
            double t = aq.t(i), s = aq.s(p);
            complex bq = s_ok ? aq(i, p) / (s * d.hbar) : complex{};
            complex bp = t_ok ? -ap(i, p) / (t * d.hbar) : complex{};
            if (s_ok && t_ok) {
                overlap = std::max(overlap, std::abs(bq - bp));
                b(i, p) = std::abs(s) >= std::abs(t) ? bq : bp;
            } else if (s_ok) {
                b(i, p) = bq;
            } else if (t_ok) {
                b(i, p) = bp;
            } else {
                inner.emplace_back(i, p);
                continue;
            }
            bmax = std::max(bmax, std::abs(b(i, p)));
        }
    }
    out.overlap_residual = bmax > 0.0 ? overlap / bmax : overlap;
    if (out.overlap_residual > opt.overlap_tol)
        throw tolerance_error("division branches disagree on the overlap", out.overlap_residual);

    GridFunction2D g = spectral_partial(aq, 0, 1) - spectral_partial(ap, 1, 0);
    detail::trig_interpolant gi(g);
    const double panel = 4.0 * std::max(aq.dt(), aq.ds());

    std::vector<complex> inner_values(inner.size());
    detail::parallel_for(inner.size(), [&](std::size_t k) {
        auto [i, p] = inner[k];
        const std::ptrdiff_t di = static_cast<std::ptrdiff_t>(i) - it0;
        const std::ptrdiff_t dp = static_cast<std::ptrdiff_t>(p) - ip0;
        if (di == 0 && dp == 0)
            return;
        // Smallest multiple reaching twice the cutoff, kept inside the grid.
        const std::ptrdiff_t reach = std::max(std::abs(di), std::abs(dp));
        std::ptrdiff_t m = (2 * cut + reach - 1) / reach;
        auto in_grid = [&](std::ptrdiff_t mm) {
            return it0 + mm * di >= 0 && it0 + mm * di < static_cast<std::ptrdiff_t>(nt) &&
                   ip0 + mm * dp >= 0 && ip0 + mm * dp < static_cast<std::ptrdiff_t>(ns);
        };
        while (m > 1 && !in_grid(m))
            --m;
        if (m * reach < cut)
            throw input_error("grid", "too coarse for the cutoff square");
        const complex b_end =
            b(static_cast<std::size_t>(it0 + m * di), static_cast<std::size_t>(ip0 + m * dp));

        double t = aq.t(i), s = aq.s(p);
        double r = std::hypot(t, s);
        double r_end = static_cast<double>(m) * r;
        double ct = t / r, cs = s / r;
        auto integrand = [&](double rho) { return rho * gi(rho * ct, rho * cs); };
        complex total{};
        int panels = std::max(1, static_cast<int>(std::ceil((r_end - r) / panel)));
        double h = (r_end - r) / panels;
        for (int j = 0; j < panels; ++j)
            total += boost::math::quadrature::gauss<double, 20>::integrate(integrand, r + j * h,
                                                                           r + (j + 1) * h);
        inner_values[k] = (r_end * r_end * b_end - total / d.hbar) / (r * r);
    });
    for (std::size_t k = 0; k < inner.size(); ++k)
        b(inner[k].first, inner[k].second) = inner_values[k];

    // Origin: continuity of b forces g(0) = 2 hbar b(0).
    b(static_cast<std::size_t>(it0), static_cast<std::size_t>(ip0)) =
        g(static_cast<std::size_t>(it0), static_cast<std::size_t>(ip0)) / (2.0 * d.hbar);
    return out;
}

} // namespace nctorus
