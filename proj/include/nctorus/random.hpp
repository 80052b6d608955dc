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
#include <cstdint>
#include <random>

#include "nctorus/lattice.hpp"
#include "nctorus/phase.hpp"
#include "nctorus/poly_symbol.hpp"

namespace nctorus {

/// Seeded generator whose outputs depend only on the seed: mt19937_64 with
/// hand-rolled mappings, since the standard distributions are not specified
/// bit-for-bit.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    /// Uniform on [lo, hi).
    double uniform(double lo = 0.0, double hi = 1.0) {
        double u = static_cast<double>(eng_() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }

    /// Uniform integer on [lo, hi].
    std::int64_t integer(std::int64_t lo, std::int64_t hi) {
        auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(eng_() % span);
    }

    complex unit_disk_complex() { return {uniform(-1.0, 1.0), uniform(-1.0, 1.0)}; }

    /// Random coefficients on a random box of radii <= max_radius, damped by
    /// (1 + |k| + |l|)^{-2}.
    CoeffLattice2 lattice(int max_radius) {
        int rk = static_cast<int>(integer(0, max_radius));
        int rl = static_cast<int>(integer(0, max_radius));
        CoeffLattice2 f(rk, rl);
        for (int k = -rk; k <= rk; ++k)
            for (int l = -rl; l <= rl; ++l) {
                double w = 1.0 + std::abs(k) + std::abs(l);
                f.ref(k, l) = unit_disk_complex() / (w * w);
            }
        return f;
    }

    /// Rational q with order in [1, max_order] or an irrational phase.
    PhaseQ phase(bool rational, std::int64_t max_order = 12) {
        if (rational) {
            auto n = integer(1, max_order);
            return PhaseQ::rational(integer(0, n - 1), n);
        }
        return PhaseQ::irrational(uniform(-3.0, 3.0));
    }

    /// Polynomial in nvars variables of total degree <= max_degree with
    /// small Gaussian-integer coefficients over 4.
    PolySymbol poly(int nvars, int max_degree, int max_terms = 6) {
        PolySymbol p(nvars);
        auto terms = integer(1, max_terms);
        for (std::int64_t t = 0; t < terms; ++t) {
            PolySymbol::Exponents e(static_cast<std::size_t>(nvars), 0);
            int budget = static_cast<int>(integer(0, max_degree));
            for (int i = 0; i < budget; ++i)
                ++e[static_cast<std::size_t>(integer(0, nvars - 1))];
            rational re(integer(-5, 5), 4), im(integer(-5, 5), 4);
            p.add_term(e, GaussRat(re, im));
        }
        return p;
    }

private:
    std::mt19937_64 eng_;
};

} // namespace nctorus
