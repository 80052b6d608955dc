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
#include <cstdint>
#include <string>

#include "nctorus/error.hpp"
#include "nctorus/torus.hpp"

namespace nctorus {

/// A bounded derivation given by its values D(U) = sum u_{k,l} U^k V^l and
/// D(V) = sum v_{k,l} U^k V^l.
struct DerivationSpec {
    CoeffLattice2 du_value;
    CoeffLattice2 dv_value;
    PhaseQ q;

    /// D_U: D(U) = U, D(V) = 0.
    static DerivationSpec d_u(const PhaseQ &q) { return {CoeffLattice2::delta(1, 0), {}, q}; }
    /// D_V: D(U) = 0, D(V) = V.
    static DerivationSpec d_v(const PhaseQ &q) { return {{}, CoeffLattice2::delta(0, 1), q}; }

    /// ad(a), via its values on the generators.
    static DerivationSpec inner(const TorusElement &a) {
        auto u = TorusElement::monomial(1, 0, a.q);
        auto v = TorusElement::monomial(0, 1, a.q);
        return {inner_derivation(a, u).coeffs, inner_derivation(a, v).coeffs, a.q};
    }
};

struct RelationReport {
    bool ok = true;
    int k = 0;
    int l = 0;
    double residual = 0.0; ///< max |lhs| over the scanned range, attained at (k, l)
};

/// Evaluates u_{k,l-1}(1 - q^{1-k}) + v_{k-1,l}(1 - q^{1-l}) over every (k, l)
/// the two value boxes can reach (plus a margin of one). Reports the first
/// location, in lexicographic order, of the largest residual.
inline RelationReport check_derivation_relation(const DerivationSpec &d, double tol = 1e-10) {
    const auto &u = d.du_value;
    const auto &v = d.dv_value;
    int rk = std::max(u.radius_k(), v.radius_k() + 1) + 1;
    int rl = std::max(u.radius_l() + 1, v.radius_l()) + 1;
    RelationReport rep;
    for (int k = -rk; k <= rk; ++k) {
        for (int l = -rl; l <= rl; ++l) {
            complex lhs = u(k, l - 1) * (1.0 - d.q.pow(1 - k)) +
                          v(k - 1, l) * (1.0 - d.q.pow(1 - l));
            double r = std::abs(lhs);
            if (r > rep.residual) {
                rep.residual = r;
                rep.k = k;
                rep.l = l;
            }
        }
    }
    rep.ok = rep.residual <= tol;
    return rep;
}

namespace detail {

/// D(U^k) by the Leibniz rule; negative powers use D(U^{-1}) = -U^{-1} D(U) U^{-1}.
/// `gen` selects U (0) or V (1).
inline TorusElement derivation_of_power(const TorusElement &dgen, int gen, int power) {
    const PhaseQ &q = dgen.q;
    auto mono = [&](int e) { return gen == 0 ? std::pair{e, 0} : std::pair{0, e}; };
    if (power == 0)
        return {CoeffLattice2{}, q};
    TorusElement dstep = dgen;
    int step = 1;
    if (power < 0) {
        auto [a, b] = mono(-1);
        dstep = -1.0 * mul_monomial_right(mul_monomial_left(a, b, dgen), a, b);
        step = -1;
    }
    int count = std::abs(power);
    TorusElement acc{CoeffLattice2{}, q};
    for (int j = 0; j < count; ++j) {
        auto [la, lb] = mono(step * j);
        auto [ra, rb] = mono(step * (count - 1 - j));
        acc = acc + mul_monomial_right(mul_monomial_left(la, lb, dstep), ra, rb);
    }
    return acc;
}

} // namespace detail

/// Extends D from its values on U and V to f by the Leibniz rule:
/// D(U^k V^l) = D(U^k) V^l + U^k D(V^l), linearly in f.
inline TorusElement apply_derivation(const DerivationSpec &d, const TorusElement &f,
                                     double tol = 1e-10) {
    require_same_q(d.q, f.q);
    auto rep = check_derivation_relation(d, tol);
    if (!rep.ok)
        throw tolerance_error("derivation relation violated at (" + std::to_string(rep.k) + "," +
                                  std::to_string(rep.l) + ")",
                              rep.residual);
    TorusElement du{d.du_value, d.q};
    TorusElement dv{d.dv_value, d.q};
    TorusElement out{CoeffLattice2{}, d.q};
    f.coeffs.for_each([&](int k, int l, complex c) {
        if (c == complex{})
            return;
        TorusElement term{CoeffLattice2{}, d.q};
        if (k != 0)
            term = term + mul_monomial_right(detail::derivation_of_power(du, 0, k), 0, l);
        if (l != 0)
            term = term + mul_monomial_left(k, 0, detail::derivation_of_power(dv, 1, l));
        out = out + c * term;
    });
    return out;
}

} // namespace nctorus
