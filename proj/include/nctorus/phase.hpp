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
#include <cstdint>
#include <numbers>
#include <numeric>
#include <string>

#include "nctorus/error.hpp"

namespace nctorus {

using complex = std::complex<double>;

namespace detail {

/// e^{2 pi i r / m} with r reduced to the signed representative in
/// (-m/2, m/2]. Quarter turns are returned exactly, and r -> -r gives the
/// exact complex conjugate.
inline complex root_of_unity(std::int64_t r, std::int64_t m) {
    r %= m;
    if (r < 0)
        r += m;
    if (r == 0)
        return {1.0, 0.0};
    if (2 * r == m)
        return {-1.0, 0.0};
    if (4 * r == m)
        return {0.0, 1.0};
    if (4 * r == 3 * m)
        return {0.0, -1.0};
    std::int64_t s = (2 * r > m) ? r - m : r;
    double angle = 2.0 * std::numbers::pi * static_cast<double>(s < 0 ? -s : s) /
                   static_cast<double>(m);
    double c = std::cos(angle);
    double si = std::sin(angle);
    return {c, s < 0 ? -si : si};
}

inline std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

} // namespace detail

/// The deformation parameter q = e^{i theta} with |q| = 1.
///
/// Rational phases theta = 2 pi p / N are stored as the reduced pair (p, N)
/// with gcd(p, N) = 1 and p in (-N/2, N/2], so N is the order of q. All
/// integer powers of a rational q are evaluated by reducing the exponent
/// modulo N first. Irrational phases store theta reduced to (-pi, pi].
class PhaseQ {
public:
    enum class Kind { rational, irrational };

    /// q = 1.
    PhaseQ() = default;

    static PhaseQ rational(std::int64_t p, std::int64_t n) {
        if (n <= 0)
            throw input_error("q", "rational modulus N must be positive");
        std::int64_t g = std::gcd(p < 0 ? -p : p, n);
        if (g == 0)
            g = n;
        p /= g;
        n /= g;
        p = detail::mod_floor(p, n);
        if (2 * p > n)
            p -= n;
        PhaseQ q;
        q.kind_ = Kind::rational;
        q.p_ = p;
        q.n_ = n;
        q.theta_ = 2.0 * std::numbers::pi * static_cast<double>(p) / static_cast<double>(n);
        return q;
    }

    static PhaseQ irrational(double theta) {
        if (!std::isfinite(theta))
            throw input_error("q", "theta must be finite");
        double t = std::remainder(theta, 2.0 * std::numbers::pi);
        if (t <= -std::numbers::pi)
            t += 2.0 * std::numbers::pi;
        PhaseQ q;
        q.kind_ = Kind::irrational;
        q.theta_ = t;
        return q;
    }

    Kind kind() const noexcept { return kind_; }
    bool is_rational() const noexcept { return kind_ == Kind::rational; }
    double theta() const noexcept { return theta_; }

    /// Numerator of the reduced fraction; only meaningful for rational q.
    std::int64_t numerator() const noexcept { return p_; }
    /// Order of q (smallest N with q^N = 1); 0 for irrational q.
    std::int64_t order() const noexcept { return is_rational() ? n_ : 0; }

    complex value() const { return pow(1); }

    /// q^n.
    complex pow(std::int64_t n) const {
        if (is_rational())
            return detail::root_of_unity(detail::mod_floor(n, n_) * p_, n_);
        return std::polar(1.0, theta_ * static_cast<double>(n));
    }

    /// q^{m/2} on the branch e^{i theta m / 2}.
    complex half_pow(std::int64_t m) const {
        if (is_rational())
            return detail::root_of_unity(detail::mod_floor(m, 2 * n_) * p_, 2 * n_);
        return std::polar(1.0, 0.5 * theta_ * static_cast<double>(m));
    }

    /// The phase with conjugate value (theta -> -theta), same kind.
    PhaseQ conjugate() const {
        return is_rational() ? rational(-p_, n_) : irrational(-theta_);
    }

    friend bool operator==(const PhaseQ &a, const PhaseQ &b) noexcept {
        if (a.kind_ != b.kind_)
            return false;
        if (a.is_rational())
            return a.p_ == b.p_ && a.n_ == b.n_;
        return a.theta_ == b.theta_;
    }

    std::string to_string() const {
        if (is_rational())
            return "rational(" + std::to_string(p_) + "/" + std::to_string(n_) + ")";
        return "theta(" + std::to_string(theta_) + ")";
    }

private:
    Kind kind_ = Kind::rational;
    std::int64_t p_ = 0;
    std::int64_t n_ = 1;
    double theta_ = 0.0;
};

/// Throws input_error naming "q" unless both phases are identical.
inline void require_same_q(const PhaseQ &a, const PhaseQ &b) {
    if (!(a == b))
        throw input_error("q", "deformation parameters differ (" + a.to_string() + " vs " +
                                   b.to_string() + ")");
}

} // namespace nctorus
