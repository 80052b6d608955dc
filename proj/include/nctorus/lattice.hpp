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
#include <complex>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "nctorus/error.hpp"
#include "nctorus/phase.hpp"

namespace nctorus {

/// A finitely supported coefficient family f_{k,l} on the box
/// [-radius_k, radius_k] x [-radius_l, radius_l] of Z^2.
///
/// Storage is row-major with k outer. Reads outside the box are exactly
/// zero, so a lattice is the same element as any zero-padded enlargement of
/// it; equality helpers compare in that sense.
class CoeffLattice2 {
public:
    CoeffLattice2() : CoeffLattice2(0, 0) {}

    CoeffLattice2(int radius_k, int radius_l)
        : rk_(radius_k), rl_(radius_l) {
        if (radius_k < 0 || radius_l < 0)
            throw input_error("radius", "box radii must be non-negative");
        coeffs_.assign(static_cast<std::size_t>(width_k()) * width_l(), complex{});
    }

    CoeffLattice2(int radius_k, int radius_l, std::vector<complex> coeffs)
        : rk_(radius_k), rl_(radius_l), coeffs_(std::move(coeffs)) {
        if (radius_k < 0 || radius_l < 0)
            throw input_error("radius", "box radii must be non-negative");
        std::size_t expected = static_cast<std::size_t>(width_k()) * width_l();
        if (coeffs_.size() != expected)
            throw input_error("coeffs", "expected " + std::to_string(expected) +
                                            " entries for the box, got " +
                                            std::to_string(coeffs_.size()));
    }

    /// The monomial c * U^k V^l.
    static CoeffLattice2 delta(int k, int l, complex c = 1.0) {
        CoeffLattice2 f(std::abs(k), std::abs(l));
        f.ref(k, l) = c;
        return f;
    }

    int radius_k() const noexcept { return rk_; }
    int radius_l() const noexcept { return rl_; }
    int width_k() const noexcept { return 2 * rk_ + 1; }
    int width_l() const noexcept { return 2 * rl_ + 1; }
    std::size_t size() const noexcept { return coeffs_.size(); }

    bool in_box(int k, int l) const noexcept {
        return k >= -rk_ && k <= rk_ && l >= -rl_ && l <= rl_;
    }

    complex operator()(int k, int l) const noexcept {
        return in_box(k, l) ? coeffs_[index(k, l)] : complex{};
    }

    /// Mutable access; (k, l) must lie in the box.
    complex &ref(int k, int l) {
        if (!in_box(k, l))
            throw input_error("index", "(" + std::to_string(k) + "," + std::to_string(l) +
                                           ") outside the lattice box");
        return coeffs_[index(k, l)];
    }

    const std::vector<complex> &coeffs() const noexcept { return coeffs_; }

    /// Calls fn(k, l, value) for every box entry in lexicographic order.
    template <class Fn> void for_each(Fn &&fn) const {
        std::size_t i = 0;
        for (int k = -rk_; k <= rk_; ++k)
            for (int l = -rl_; l <= rl_; ++l, ++i)
                fn(k, l, coeffs_[i]);
    }

    /// Same element on an enlarged box.
    CoeffLattice2 padded(int radius_k, int radius_l) const {
        CoeffLattice2 out(std::max(radius_k, rk_), std::max(radius_l, rl_));
        for_each([&](int k, int l, complex c) { out.ref(k, l) = c; });
        return out;
    }

    bool is_zero() const noexcept {
        return std::all_of(coeffs_.begin(), coeffs_.end(),
                           [](complex c) { return c == complex{}; });
    }

    CoeffLattice2 &operator+=(const CoeffLattice2 &o) {
        if (o.rk_ > rk_ || o.rl_ > rl_)
            *this = padded(o.rk_, o.rl_);
        o.for_each([&](int k, int l, complex c) { coeffs_[index(k, l)] += c; });
        return *this;
    }

    CoeffLattice2 &operator-=(const CoeffLattice2 &o) {
        if (o.rk_ > rk_ || o.rl_ > rl_)
            *this = padded(o.rk_, o.rl_);
        o.for_each([&](int k, int l, complex c) { coeffs_[index(k, l)] -= c; });
        return *this;
    }

    CoeffLattice2 &operator*=(complex a) {
        for (auto &c : coeffs_)
            c *= a;
        return *this;
    }

    friend CoeffLattice2 operator+(CoeffLattice2 a, const CoeffLattice2 &b) { return a += b; }
    friend CoeffLattice2 operator-(CoeffLattice2 a, const CoeffLattice2 &b) { return a -= b; }
    friend CoeffLattice2 operator*(complex s, CoeffLattice2 a) { return a *= s; }

    /// Exact equality up to zero padding.
    friend bool operator==(const CoeffLattice2 &a, const CoeffLattice2 &b) {
        int rk = std::max(a.rk_, b.rk_), rl = std::max(a.rl_, b.rl_);
        for (int k = -rk; k <= rk; ++k)
            for (int l = -rl; l <= rl; ++l)
                if (a(k, l) != b(k, l))
                    return false;
        return true;
    }

private:
    std::size_t index(int k, int l) const noexcept {
        return static_cast<std::size_t>(k + rk_) * static_cast<std::size_t>(width_l()) +
               static_cast<std::size_t>(l + rl_);
    }

    int rk_;
    int rl_;
    std::vector<complex> coeffs_;
};

/// max_{k,l} |f_{k,l} - g_{k,l}| over the union of both boxes.
inline double max_abs_diff(const CoeffLattice2 &f, const CoeffLattice2 &g) {
    int rk = std::max(f.radius_k(), g.radius_k());
    int rl = std::max(f.radius_l(), g.radius_l());
    double m = 0.0;
    for (int k = -rk; k <= rk; ++k)
        for (int l = -rl; l <= rl; ++l)
            m = std::max(m, std::abs(f(k, l) - g(k, l)));
    return m;
}

/// Weighted sup seminorm sup |f_{k,l}| (1 + |k| + |l|)^m.
inline double seminorm(const CoeffLattice2 &f, int m) {
    if (m < 0)
        throw input_error("m", "seminorm order must be non-negative");
    double best = 0.0;
    f.for_each([&](int k, int l, complex c) {
        double a = std::abs(c);
        if (a == 0.0)
            return;
        best = std::max(best, a * std::pow(1.0 + std::abs(k) + std::abs(l), m));
    });
    return best;
}

/// Primed coefficients f'_{k,l} = f_{k,l} q^{kl/2}, branch e^{i theta kl/2}.
inline CoeffLattice2 to_primed(const CoeffLattice2 &f, const PhaseQ &q) {
    CoeffLattice2 out(f.radius_k(), f.radius_l());
    f.for_each([&](int k, int l, complex c) {
        out.ref(k, l) = c * q.half_pow(static_cast<std::int64_t>(k) * l);
    });
    return out;
}

/// Inverse of to_primed. Uses the conjugate branch value directly, since at
/// theta = pi the conjugate phase has the same principal half angle.
inline CoeffLattice2 from_primed(const CoeffLattice2 &f, const PhaseQ &q) {
    CoeffLattice2 out(f.radius_k(), f.radius_l());
    f.for_each([&](int k, int l, complex c) {
        out.ref(k, l) = c * std::conj(q.half_pow(static_cast<std::int64_t>(k) * l));
    });
    return out;
}

/// Restriction of f to a smaller box; the discarded coefficients are
/// summarized by their seminorm of order 0.
struct Truncation {
    CoeffLattice2 kept;
    double tail_sup = 0.0;
};

inline Truncation truncate(const CoeffLattice2 &f, int radius_k, int radius_l) {
    Truncation t{CoeffLattice2(radius_k, radius_l), 0.0};
    f.for_each([&](int k, int l, complex c) {
        if (t.kept.in_box(k, l))
            t.kept.ref(k, l) = c;
        else
            t.tail_sup = std::max(t.tail_sup, std::abs(c));
    });
    return t;
}

} // namespace nctorus
