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
#include <numbers>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "nctorus/error.hpp"
#include "nctorus/torus.hpp"

namespace nctorus {

using MatrixN = Eigen::MatrixXcd;

/// Largest singular value, by 50 power iterations on M^dagger M.
inline double op_norm(const MatrixN &m, int iterations = 50) {
    if (m.size() == 0)
        return 0.0;
    const double fro = m.norm();
    if (fro == 0.0)
        return 0.0;
    // Deterministic start vector with no special alignment to the basis.
    Eigen::VectorXcd x(m.cols());
    for (Eigen::Index i = 0; i < x.size(); ++i)
        x[i] = complex(1.0 + 0.1 * static_cast<double>(i), 0.3 - 0.07 * static_cast<double>(i));
    x.normalize();
    double sigma = 0.0;
    for (int it = 0; it < iterations; ++it) {
        Eigen::VectorXcd y = m.adjoint() * (m * x);
        double ny = y.norm();
        if (ny == 0.0)
            return 0.0;
        x = y / ny;
        sigma = std::sqrt(ny);
    }
    return std::max(sigma, (m * x).norm());
}

inline std::int64_t require_rational(const PhaseQ &q) {
    if (!q.is_rational())
        throw input_error("q", "matrix realization needs a rational deformation parameter");
    return q.order();
}

/// Unit complex power z^n for |z| = 1, on the principal argument.
inline complex unit_pow(complex z, std::int64_t n) {
    return std::polar(1.0, std::arg(z) * static_cast<double>(n));
}

/// U0^k V0^l: entry (i, (i + k) mod N) equals q^{((i + k) mod N) l}.
inline MatrixN clock_shift_monomial(const PhaseQ &q, std::int64_t k, std::int64_t l) {
    const std::int64_t n = require_rational(q);
    MatrixN m = MatrixN::Zero(n, n);
    for (std::int64_t i = 0; i < n; ++i) {
        std::int64_t j = detail::mod_floor(i + k, n);
        m(i, j) = q.pow(j * detail::mod_floor(l, n));
    }
    return m;
}

/// The cyclic shift U0 and the clock V0 = diag(1, q, ..., q^{N-1}).
inline std::pair<MatrixN, MatrixN> clock_shift(const PhaseQ &q) {
    return {clock_shift_monomial(q, 1, 0), clock_shift_monomial(q, 0, 1)};
}

inline void require_unit(complex z, const char *field) {
    if (std::abs(std::abs(z) - 1.0) > 1e-12)
        throw input_error(field, "must have modulus 1");
}

/// Fibre value of f at (u, v): sum f_{k,l} u^k v^l U0^k V0^l.
inline MatrixN eval_section(const TorusElement &f, complex u, complex v) {
    const std::int64_t n = require_rational(f.q);
    require_unit(u, "u");
    require_unit(v, "v");
    MatrixN out = MatrixN::Zero(n, n);
    f.coeffs.for_each([&](int k, int l, complex c) {
        if (c == complex{})
            return;
        complex s = c * unit_pow(u, k) * unit_pow(v, l);
        for (std::int64_t i = 0; i < n; ++i) {
            std::int64_t j = detail::mod_floor(i + k, n);
            out(i, j) += s * f.q.pow(j * detail::mod_floor(l, n));
        }
    });
    return out;
}

/// One coefficient c_{k,l,s,t} of a matrix-valued function
/// sum c_{k,l,s,t} u^k v^l U0^s V0^t.
struct SectionEntry {
    int k = 0;
    int l = 0;
    int s = 0;
    int t = 0;
    complex value;
};

struct EquivarianceReport {
    bool ok = true;
    std::optional<SectionEntry> violation;
};

/// Z_N^2-equivariance: nonzero c_{k,l,s,t} only for k = s and l = t mod N.
inline EquivarianceReport equivariance_check(std::vector<SectionEntry> family, const PhaseQ &q) {
    const std::int64_t n = require_rational(q);
    for (const auto &e : family)
        if (e.s < 0 || e.s >= n || e.t < 0 || e.t >= n)
            throw input_error("s,t", "matrix exponents must lie in 0..N-1");
    std::stable_sort(family.begin(), family.end(), [](const auto &a, const auto &b) {
        return std::tie(a.k, a.l, a.s, a.t) < std::tie(b.k, b.l, b.s, b.t);
    });
    for (const auto &e : family) {
        if (e.value == complex{})
            continue;
        if (detail::mod_floor(e.k - e.s, n) != 0 || detail::mod_floor(e.l - e.t, n) != 0)
            return {false, e};
    }
    return {true, std::nullopt};
}

/// Re-expands f = sum c_{k,l} (uU0)^k (vV0)^l into the family c_{k,l,s,t}.
inline std::vector<SectionEntry> expand_section(const TorusElement &f) {
    const std::int64_t n = require_rational(f.q);
    std::vector<SectionEntry> out;
    f.coeffs.for_each([&](int k, int l, complex c) {
        if (c != complex{})
            out.push_back({k, l, static_cast<int>(detail::mod_floor(k, n)),
                           static_cast<int>(detail::mod_floor(l, n)), c});
    });
    return out;
}

/// Evaluates a family c_{k,l,s,t} at (u, v) directly.
inline MatrixN eval_family(const std::vector<SectionEntry> &family, const PhaseQ &q, complex u,
                           complex v) {
    const std::int64_t n = require_rational(q);
    MatrixN out = MatrixN::Zero(n, n);
    for (const auto &e : family)
        out += e.value * unit_pow(u, e.k) * unit_pow(v, e.l) * clock_shift_monomial(q, e.s, e.t);
    return out;
}

/// Sample points e^{2 pi i (j + offset) / count}. The default offset is an
/// irrational rotation so no sample sits on a root of unity.
inline std::vector<complex> circle_samples(int count = 16,
                                           double offset = 0.6180339887498949) {
    std::vector<complex> z;
    z.reserve(static_cast<std::size_t>(count));
    for (int j = 0; j < count; ++j)
        z.push_back(std::polar(1.0, 2.0 * std::numbers::pi * (j + offset) / count));
    return z;
}

} // namespace nctorus
