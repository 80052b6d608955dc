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
#include <utility>
#include <variant>
#include <vector>

#include "nctorus/lattice.hpp"
#include "nctorus/phase.hpp"

namespace nctorus {

/// An element sum f_{k,l} U^k V^l of the noncommutative torus with UV = qVU.
struct TorusElement {
    CoeffLattice2 coeffs;
    PhaseQ q;

    static TorusElement unit(const PhaseQ &q) { return {CoeffLattice2::delta(0, 0), q}; }
    static TorusElement monomial(int k, int l, const PhaseQ &q, complex c = 1.0) {
        return {CoeffLattice2::delta(k, l, c), q};
    }

    complex operator()(int k, int l) const noexcept { return coeffs(k, l); }

    friend TorusElement operator+(const TorusElement &a, const TorusElement &b) {
        require_same_q(a.q, b.q);
        return {a.coeffs + b.coeffs, a.q};
    }
    friend TorusElement operator-(const TorusElement &a, const TorusElement &b) {
        require_same_q(a.q, b.q);
        return {a.coeffs - b.coeffs, a.q};
    }
    friend TorusElement operator*(complex s, TorusElement a) {
        a.coeffs *= s;
        return a;
    }
};

inline double max_abs_diff(const TorusElement &a, const TorusElement &b) {
    return max_abs_diff(a.coeffs, b.coeffs);
}

/// Twisted product (fg)_{k,l} = sum_{m,n} f_{m,n} g_{k-m,l-n} q^{-n(k-m)}.
///
/// The output box is the Minkowski sum of the input boxes. Each output
/// coefficient accumulates its terms in lexicographic (m, n) order.
inline TorusElement q_mul(const TorusElement &f, const TorusElement &g) {
    require_same_q(f.q, g.q);
    const auto &a = f.coeffs;
    const auto &b = g.coeffs;
    CoeffLattice2 out(a.radius_k() + b.radius_k(), a.radius_l() + b.radius_l());

    // q^{-n m'} for the factor pair; tabulated by residue for rational q.
    const PhaseQ &q = f.q;
    std::vector<complex> table;
    if (q.is_rational()) {
        table.resize(static_cast<std::size_t>(q.order()));
        for (std::int64_t r = 0; r < q.order(); ++r)
            table[static_cast<std::size_t>(r)] = q.pow(-r);
    }
    auto phase = [&](std::int64_t e) -> complex {
        if (q.is_rational())
            return table[static_cast<std::size_t>(detail::mod_floor(e, q.order()))];
        return q.pow(-e);
    };

    a.for_each([&](int m, int n, complex fa) {
        if (fa == complex{})
            return;
        b.for_each([&](int mk, int nl, complex gb) {
            if (gb == complex{})
                return;
            out.ref(m + mk, n + nl) += fa * gb * phase(static_cast<std::int64_t>(n) * mk);
        });
    });
    return {std::move(out), q};
}

/// U^a V^b * g, a coefficient shift with phase q^{-b m}.
inline TorusElement mul_monomial_left(int a, int b, const TorusElement &g) {
    CoeffLattice2 out(g.coeffs.radius_k() + std::abs(a), g.coeffs.radius_l() + std::abs(b));
    g.coeffs.for_each([&](int m, int n, complex c) {
        if (c != complex{})
            out.ref(m + a, n + b) += c * g.q.pow(-static_cast<std::int64_t>(b) * m);
    });
    return {std::move(out), g.q};
}

/// g * U^a V^b, a coefficient shift with phase q^{-n a}.
inline TorusElement mul_monomial_right(const TorusElement &g, int a, int b) {
    CoeffLattice2 out(g.coeffs.radius_k() + std::abs(a), g.coeffs.radius_l() + std::abs(b));
    g.coeffs.for_each([&](int m, int n, complex c) {
        if (c != complex{})
            out.ref(m + a, n + b) += c * g.q.pow(-static_cast<std::int64_t>(n) * a);
    });
    return {std::move(out), g.q};
}

/// (f*)_{k,l} = conj(f_{-k,-l}) q^{-kl}.
inline TorusElement adjoint(const TorusElement &f) {
    CoeffLattice2 out(f.coeffs.radius_k(), f.coeffs.radius_l());
    f.coeffs.for_each([&](int k, int l, complex c) {
        out.ref(-k, -l) = std::conj(c) * f.q.pow(-static_cast<std::int64_t>(k) * l);
    });
    return {std::move(out), f.q};
}

inline complex trace(const TorusElement &f) { return f(0, 0); }

/// sqrt(sum |f_{k,l}|^2), the value of the trace state seminorm.
inline double l2_state(const TorusElement &f) {
    double s = 0.0;
    f.coeffs.for_each([&](int, int, complex c) { s += std::norm(c); });
    return std::sqrt(s);
}

/// sqrt(tr(f* f)) computed through the product; agrees with l2_state.
inline double l2_state_via_trace(const TorusElement &f) {
    return std::sqrt(std::max(0.0, trace(q_mul(adjoint(f), f)).real()));
}

/// D_U^m D_V^n: coefficient-wise multiplication by k^m l^n (0^0 = 1).
inline TorusElement d_power(const TorusElement &f, int m, int n) {
    if (m < 0 || n < 0)
        throw input_error("word", "derivation powers must be non-negative");
    CoeffLattice2 out(f.coeffs.radius_k(), f.coeffs.radius_l());
    f.coeffs.for_each([&](int k, int l, complex c) {
        double w = std::pow(static_cast<double>(k), m) * std::pow(static_cast<double>(l), n);
        out.ref(k, l) = c * w;
    });
    return {std::move(out), f.q};
}

/// ad(a) f = a f - f a.
inline TorusElement inner_derivation(const TorusElement &a, const TorusElement &f) {
    return q_mul(a, f) - q_mul(f, a);
}

/// The tracial state f -> tr(f).
struct TraceState {};

/// The vector state omega_g(f) = tr(g* f g).
struct VectorState {
    TorusElement g;
};

using TorusState = std::variant<TraceState, VectorState>;

/// nu(f) = phi(f* f)^{1/2} for the given state.
inline double state_seminorm(const TorusElement &f, const TorusState &state) {
    if (const auto *v = std::get_if<VectorState>(&state))
        return l2_state(q_mul(f, v->g));
    return l2_state(f);
}

/// nu_phi o X_1 o ... o X_p where each X_i = D_U^{m_i} D_V^{n_i}.
inline double smooth_seminorm(const TorusElement &f, const std::vector<std::pair<int, int>> &word,
                              const TorusState &state = TraceState{}) {
    TorusElement g = f;
    for (auto it = word.rbegin(); it != word.rend(); ++it)
        g = d_power(g, it->first, it->second);
    return state_seminorm(g, state);
}

} // namespace nctorus
