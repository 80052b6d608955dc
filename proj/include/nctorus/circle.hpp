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
#include <cstdint>
#include <numeric>
#include <tuple>
#include <vector>

#include "nctorus/matrep.hpp"

namespace nctorus {

/// Noncommutative circle of slope b/a inside the rational torus: U, V and a
/// central Z with UV = qVU, U^N = Z^a, V^N = Z^b and Z = U^{N a'} V^{N b'}.
class CircleSpec {
public:
    CircleSpec(int a, int b, int a_prime, int b_prime, const PhaseQ &q)
        : a_(a), b_(b), ap_(a_prime), bp_(b_prime), q_(q) {
        require_rational(q);
        if (std::gcd(a, b) != 1)
            throw input_error("spec", "a and b must be coprime");
        if (static_cast<std::int64_t>(a) * a_prime + static_cast<std::int64_t>(b) * b_prime != 1)
            throw input_error("spec", "a*a_prime + b*b_prime must equal 1");
    }

    /// Completes (a, b) with Bezout coefficients from the extended Euclidean
    /// algorithm.
    static CircleSpec with_bezout(int a, int b, const PhaseQ &q) {
        auto [g, x, y] = extended_gcd(a, b);
        if (g == -1) {
            x = -x;
            y = -y;
        }
        return CircleSpec(a, b, x, y, q);
    }

    int a() const noexcept { return a_; }
    int b() const noexcept { return b_; }
    int a_prime() const noexcept { return ap_; }
    int b_prime() const noexcept { return bp_; }
    const PhaseQ &q() const noexcept { return q_; }
    std::int64_t order() const noexcept { return q_.order(); }

private:
    static std::tuple<int, int, int> extended_gcd(int a, int b) {
        int old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
        while (r != 0) {
            int quo = old_r / r;
            std::tie(old_r, r) = std::make_tuple(r, old_r - quo * r);
            std::tie(old_s, s) = std::make_tuple(s, old_s - quo * s);
            std::tie(old_t, t) = std::make_tuple(t, old_t - quo * t);
        }
        return {old_r, old_s, old_t};
    }

    int a_, b_, ap_, bp_;
    PhaseQ q_;
};

/// Coefficient c_{j,s,t} of Z^j U^s V^t, with 0 <= s, t <= N-1.
struct CircleTerm {
    int j = 0;
    int s = 0;
    int t = 0;
    complex value;
};

/// Generators at the point z of the circle: Z = z^N, U = z^a U0, V = z^b V0.
struct CircleFibre {
    MatrixN z_gen;
    MatrixN u_gen;
    MatrixN v_gen;
};

inline CircleFibre circle_generators(const CircleSpec &spec, complex z) {
    require_unit(z, "z");
    const auto n = spec.order();
    auto [u0, v0] = clock_shift(spec.q());
    return {unit_pow(z, n) * MatrixN::Identity(n, n), unit_pow(z, spec.a()) * u0,
            unit_pow(z, spec.b()) * v0};
}

/// sum c_{j,s,t} z^{jN} (z^a U0)^s (z^b V0)^t.
inline MatrixN circle_eval(const std::vector<CircleTerm> &terms, const CircleSpec &spec,
                           complex z) {
    require_unit(z, "z");
    const auto n = spec.order();
    MatrixN out = MatrixN::Zero(n, n);
    for (const auto &c : terms) {
        if (c.s < 0 || c.s >= n || c.t < 0 || c.t >= n)
            throw input_error("coeffs", "exponents s, t must lie in 0..N-1");
        out += c.value * unit_pow(z, static_cast<std::int64_t>(c.j) * n) *
               unit_pow(z, static_cast<std::int64_t>(spec.a()) * c.s) *
               unit_pow(z, static_cast<std::int64_t>(spec.b()) * c.t) *
               clock_shift_monomial(spec.q(), c.s, c.t);
    }
    return out;
}

/// M^e by repeated multiplication; negative e uses M^{-e} = (M^{|e|})^dagger,
/// valid for the unitary generators used here.
inline MatrixN unitary_power(const MatrixN &m, std::int64_t e) {
    MatrixN r = MatrixN::Identity(m.rows(), m.cols());
    for (std::int64_t i = 0; i < (e < 0 ? -e : e); ++i)
        r = r * m;
    return e < 0 ? MatrixN(r.adjoint()) : r;
}

/// Max operator-norm residual of UV - qVU, ZU - UZ, ZV - VZ, U^N - Z^a,
/// V^N - Z^b and Z - U^{N a'} V^{N b'} over the sample points.
inline double circle_check_relations(const CircleSpec &spec, const std::vector<complex> &samples) {
    const auto n = spec.order();
    const complex q = spec.q().value();
    double worst = 0.0;
    for (complex z : samples) {
        auto g = circle_generators(spec, z);
        const MatrixN &zg = g.z_gen, &u = g.u_gen, &v = g.v_gen;
        worst = std::max(worst, op_norm(u * v - q * v * u));
        worst = std::max(worst, op_norm(zg * u - u * zg));
        worst = std::max(worst, op_norm(zg * v - v * zg));
        worst = std::max(worst, op_norm(unitary_power(u, n) - unitary_power(zg, spec.a())));
        worst = std::max(worst, op_norm(unitary_power(v, n) - unitary_power(zg, spec.b())));
        worst = std::max(worst, op_norm(zg - unitary_power(u, n * spec.a_prime()) *
                                                 unitary_power(v, n * spec.b_prime())));
    }
    return worst;
}

} // namespace nctorus
