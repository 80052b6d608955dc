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

#include <cstddef>

#include "nctorus/error.hpp"
#include "nctorus/poly_symbol.hpp"

namespace nctorus {

namespace detail {

inline void require_phase_space(const PolySymbol &f, const PolySymbol &g) {
    if (f.nvars() != g.nvars())
        throw input_error("nvars", "symbols have different variable counts");
    if (f.nvars() % 2 != 0)
        throw input_error("nvars", "phase space needs an even number of variables");
}

/// One application of sum_i (d_{y_{2i}} d_{z_{2i-1}} - d_{y_{2i-1}} d_{z_{2i}})
/// to F(y, z), or only the first product in each pair when half is set.
inline PolySymbol bidifferential(const PolySymbol &F, bool half) {
    const int m = F.nvars() / 2;
    PolySymbol out(F.nvars());
    for (int i = 1; 2 * i <= m; ++i) {
        const int y_odd = 2 * i - 1, y_even = 2 * i;
        const int z_odd = m + 2 * i - 1, z_even = m + 2 * i;
        out = out + F.derivative(y_even).derivative(z_odd);
        if (!half)
            out = out - F.derivative(y_odd).derivative(z_even);
    }
    return out;
}

inline HbarSeries bidifferential_series(const PolySymbol &f, const PolySymbol &g, int K,
                                        bool half) {
    require_phase_space(f, g);
    if (K < 0)
        throw input_error("order", "K must be non-negative");
    HbarSeries out;
    PolySymbol F = tensor(f, g);
    for (int k = 0; k <= K; ++k) {
        out.coeffs.push_back(moyal_prefactor(k, half ? 1 : 2) * F.diagonal());
        F = bidifferential(F, half);
    }
    return out;
}

} // namespace detail

/// f * g to order K: the hbar^k coefficient is
/// (-i)^k / (2^k k!) (B^k (f(y) g(z)))|_{y=z=x},
/// B = sum_i (d_{y_{2i}} d_{z_{2i-1}} - d_{y_{2i-1}} d_{z_{2i}}).
inline HbarSeries moyal_star(const PolySymbol &f, const PolySymbol &g, int K) {
    return detail::bidifferential_series(f, g, K, false);
}

/// sum_k (-i hbar)^k / k! d_2^k f d_1^k g, with d_2 d_1 summed over the
/// coordinate pairs in more than two variables.
inline HbarSeries half_moyal(const PolySymbol &f, const PolySymbol &g, int K) {
    return detail::bidifferential_series(f, g, K, true);
}

/// Product of two series truncated at order K, using moyal_star termwise.
inline HbarSeries moyal_star(const HbarSeries &F, const HbarSeries &G, int K) {
    if (F.coeffs.empty() || G.coeffs.empty())
        throw input_error("series", "empty series");
    const int nv = F.coeffs.front().nvars();
    HbarSeries out;
    out.coeffs.assign(static_cast<std::size_t>(K + 1), PolySymbol(nv));
    for (int a = 0; a <= F.order() && a <= K; ++a) {
        for (int b = 0; a + b <= K && b <= G.order(); ++b) {
            auto s = moyal_star(F.coeffs[static_cast<std::size_t>(a)],
                                G.coeffs[static_cast<std::size_t>(b)], K - a - b);
            for (int c = 0; a + b + c <= K; ++c)
                out.coeffs[static_cast<std::size_t>(a + b + c)] =
                    out.coeffs[static_cast<std::size_t>(a + b + c)] +
                    s.coeffs[static_cast<std::size_t>(c)];
        }
    }
    return out;
}

inline HbarSeries as_series(const PolySymbol &f, int K) {
    HbarSeries s;
    s.coeffs.assign(static_cast<std::size_t>(K + 1), PolySymbol(f.nvars()));
    s.coeffs[0] = f;
    return s;
}

/// {f, g} = sum_i (d_{2i} f d_{2i-1} g - d_{2i-1} f d_{2i} g).
inline PolySymbol poisson_bracket(const PolySymbol &f, const PolySymbol &g) {
    detail::require_phase_space(f, g);
    return detail::bidifferential(tensor(f, g), false).diagonal();
}

} // namespace nctorus
