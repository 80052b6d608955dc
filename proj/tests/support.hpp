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
#include <numbers>

#include "nctorus/nctorus.hpp"

namespace testing {

using nctorus::complex;
using nctorus::GridFunction1D;
using nctorus::GridFunction2D;

inline GridFunction1D gauss1(double c, double w, double kick = 0.0, double L = 16.0,
                             std::size_t n = 512) {
    return GridFunction1D::sample(L, n, [=](double u) {
        double x = (u - c) / w;
        return std::exp(-0.5 * x * x) * std::polar(1.0, kick * u);
    });
}

inline GridFunction2D gauss2(double t0, double s0, double w, complex amp = 1.0, double L = 8.0,
                             std::size_t n = 64) {
    return GridFunction2D::sample(L, L, n, n, [=](double t, double s) {
        double r2 = ((t - t0) * (t - t0) + (s - s0) * (s - s0)) / (w * w);
        return amp * std::exp(-0.5 * r2);
    });
}

/// q^e straight from the angle, no exponent reduction.
inline complex qpow(const nctorus::PhaseQ &q, long e) {
    return std::polar(1.0, q.theta() * static_cast<double>(e));
}

/// Direct O(n^4) Riemann sum of a(x - y) b(y) phase(x, y) over the grid, with
/// x - y read off the same grid (zero outside).
template <class Phase>
GridFunction2D brute_conv(const GridFunction2D &a, const GridFunction2D &b, Phase phase) {
    GridFunction2D out = a.zeros_like();
    const long nt = static_cast<long>(a.n_t()), ns = static_cast<long>(a.n_s());
    for (long i = 0; i < nt; ++i)
        for (long p = 0; p < ns; ++p) {
            complex acc{};
            for (long j = 0; j < nt; ++j)
                for (long r = 0; r < ns; ++r) {
                    long ia = i - j + nt / 2, pa = p - r + ns / 2;
                    if (ia < 0 || ia >= nt || pa < 0 || pa >= ns)
                        continue;
                    acc += a(ia, pa) * b(j, r) * phase(a.t(i), a.s(p), a.t(j), a.s(r));
                }
            out(i, p) = acc * a.dt() * a.ds();
        }
    return out;
}

inline double rel(const GridFunction2D &a, const GridFunction2D &b) {
    return nctorus::relative_l2(a, b);
}

} // namespace testing
