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
#include <functional>
#include <string>
#include <vector>

#include "nctorus/error.hpp"
#include "nctorus/fft.hpp"

namespace nctorus {

namespace detail {

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline void check_axis(std::size_t n, double half_extent, const char *n_field,
                       const char *l_field) {
    if (n < 8 || !is_pow2(n))
        throw input_error(n_field, "sample count must be a power of two >= 8");
    if (!(half_extent > 0.0) || !std::isfinite(half_extent))
        throw input_error(l_field, "half extent must be positive and finite");
}

inline void check_finite(const std::vector<complex> &v) {
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag()))
            throw input_error("values", "non-finite entry at index " + std::to_string(i));
}

/// z^e by repeated multiplication (exact for e <= 2 on axis-aligned z).
inline complex ipow(complex z, int e) {
    complex r = 1.0;
    for (int i = 0; i < e; ++i)
        r *= z;
    return r;
}

} // namespace detail

/// Samples of a function on [-L, L) at u_j = -L + j (2L/n).
class GridFunction1D {
public:
    GridFunction1D(double half_extent, std::size_t n)
        : GridFunction1D(half_extent, n, std::vector<complex>(n)) {}

    GridFunction1D(double half_extent, std::size_t n, std::vector<complex> values)
        : L_(half_extent), n_(n), values_(std::move(values)) {
        detail::check_axis(n, half_extent, "n", "half_extent");
        if (values_.size() != n)
            throw input_error("values", "expected " + std::to_string(n) + " samples, got " +
                                            std::to_string(values_.size()));
        detail::check_finite(values_);
    }

    static GridFunction1D sample(double half_extent, std::size_t n,
                                 const std::function<complex(double)> &fn) {
        GridFunction1D f(half_extent, n);
        for (std::size_t j = 0; j < n; ++j)
            f.values_[j] = fn(f.x(j));
        return f;
    }

    double half_extent() const noexcept { return L_; }
    std::size_t n() const noexcept { return n_; }
    double dx() const noexcept { return 2.0 * L_ / static_cast<double>(n_); }
    double x(std::size_t j) const noexcept { return -L_ + static_cast<double>(j) * dx(); }

    const std::vector<complex> &values() const noexcept { return values_; }
    std::vector<complex> &values() noexcept { return values_; }
    complex operator[](std::size_t j) const noexcept { return values_[j]; }
    complex &operator[](std::size_t j) noexcept { return values_[j]; }

    bool same_grid(const GridFunction1D &o) const noexcept { return L_ == o.L_ && n_ == o.n_; }

private:
    double L_;
    std::size_t n_;
    std::vector<complex> values_;
};

/// Samples on [-L_t, L_t) x [-L_s, L_s), row-major with t outer.
class GridFunction2D {
public:
    GridFunction2D(double half_extent_t, double half_extent_s, std::size_t n_t, std::size_t n_s)
        : GridFunction2D(half_extent_t, half_extent_s, n_t, n_s,
                         std::vector<complex>(n_t * n_s)) {}

    GridFunction2D(double half_extent_t, double half_extent_s, std::size_t n_t, std::size_t n_s,
                   std::vector<complex> values)
        : Lt_(half_extent_t), Ls_(half_extent_s), nt_(n_t), ns_(n_s), values_(std::move(values)) {
        detail::check_axis(n_t, half_extent_t, "n_t", "half_extent_t");
        detail::check_axis(n_s, half_extent_s, "n_s", "half_extent_s");
        if (values_.size() != n_t * n_s)
            throw input_error("values", "expected " + std::to_string(n_t * n_s) +
                                            " samples, got " + std::to_string(values_.size()));
        detail::check_finite(values_);
    }

    /// Square grid [-L, L)^2 with n x n samples.
    static GridFunction2D square(double half_extent, std::size_t n) {
        return GridFunction2D(half_extent, half_extent, n, n);
    }

    static GridFunction2D sample(double half_extent_t, double half_extent_s, std::size_t n_t,
                                 std::size_t n_s, const std::function<complex(double, double)> &fn) {
        GridFunction2D f(half_extent_t, half_extent_s, n_t, n_s);
        for (std::size_t i = 0; i < n_t; ++i)
            for (std::size_t p = 0; p < n_s; ++p)
                f(i, p) = fn(f.t(i), f.s(p));
        return f;
    }

    /// An empty function on the same grid.
    GridFunction2D zeros_like() const { return GridFunction2D(Lt_, Ls_, nt_, ns_); }

    double half_extent_t() const noexcept { return Lt_; }
    double half_extent_s() const noexcept { return Ls_; }
    std::size_t n_t() const noexcept { return nt_; }
    std::size_t n_s() const noexcept { return ns_; }
    double dt() const noexcept { return 2.0 * Lt_ / static_cast<double>(nt_); }
    double ds() const noexcept { return 2.0 * Ls_ / static_cast<double>(ns_); }
    double t(std::size_t i) const noexcept { return -Lt_ + static_cast<double>(i) * dt(); }
    double s(std::size_t p) const noexcept { return -Ls_ + static_cast<double>(p) * ds(); }

    complex operator()(std::size_t i, std::size_t p) const noexcept { return values_[i * ns_ + p]; }
    complex &operator()(std::size_t i, std::size_t p) noexcept { return values_[i * ns_ + p]; }

    const std::vector<complex> &values() const noexcept { return values_; }
    std::vector<complex> &values() noexcept { return values_; }

    bool same_grid(const GridFunction2D &o) const noexcept {
        return Lt_ == o.Lt_ && Ls_ == o.Ls_ && nt_ == o.nt_ && ns_ == o.ns_;
    }

    GridFunction2D &operator+=(const GridFunction2D &o) {
        require_same_grid(o);
        for (std::size_t i = 0; i < values_.size(); ++i)
            values_[i] += o.values_[i];
        return *this;
    }
    GridFunction2D &operator-=(const GridFunction2D &o) {
        require_same_grid(o);
        for (std::size_t i = 0; i < values_.size(); ++i)
            values_[i] -= o.values_[i];
        return *this;
    }
    GridFunction2D &operator*=(complex c) {
        for (auto &v : values_)
            v *= c;
        return *this;
    }
    friend GridFunction2D operator+(GridFunction2D a, const GridFunction2D &b) { return a += b; }
    friend GridFunction2D operator-(GridFunction2D a, const GridFunction2D &b) { return a -= b; }
    friend GridFunction2D operator*(complex c, GridFunction2D a) { return a *= c; }

    void require_same_grid(const GridFunction2D &o) const {
        if (!same_grid(o))
            throw input_error("grid", "grid functions live on different grids");
    }

private:
    double Lt_, Ls_;
    std::size_t nt_, ns_;
    std::vector<complex> values_;
};

/// Discrete l2 norm sqrt(sum |v|^2 dx).
inline double l2_norm(const GridFunction1D &f) {
    double s = 0.0;
    for (auto v : f.values())
        s += std::norm(v);
    return std::sqrt(s * f.dx());
}

inline double l2_norm(const GridFunction2D &f) {
    double s = 0.0;
    for (auto v : f.values())
        s += std::norm(v);
    return std::sqrt(s * f.dt() * f.ds());
}

inline double max_abs(const std::vector<complex> &v) {
    double m = 0.0;
    for (auto x : v)
        m = std::max(m, std::abs(x));
    return m;
}

/// ||a - b|| / ||b|| in the discrete l2 norm (absolute when b = 0).
inline double relative_l2(const GridFunction2D &a, const GridFunction2D &b) {
    a.require_same_grid(b);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.values().size(); ++i) {
        num += std::norm(a.values()[i] - b.values()[i]);
        den += std::norm(b.values()[i]);
    }
    return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

inline double relative_l2(const GridFunction1D &a, const GridFunction1D &b) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.n(); ++i) {
        num += std::norm(a[i] - b[i]);
        den += std::norm(b[i]);
    }
    return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

struct DecayReport {
    bool ok = true;
    double boundary_ratio = 0.0; ///< max |f| on the outer frame / max |f|
};

/// Largest value on the outermost sample ring relative to the peak.
inline DecayReport boundary_decay(const GridFunction1D &f, double tol = 1e-10) {
    double peak = max_abs(f.values());
    double edge = std::max(std::abs(f[0]), std::abs(f[f.n() - 1]));
    DecayReport r;
    r.boundary_ratio = peak > 0.0 ? edge / peak : 0.0;
    r.ok = r.boundary_ratio <= tol;
    return r;
}

inline DecayReport boundary_decay(const GridFunction2D &f, double tol = 1e-10) {
    double peak = max_abs(f.values());
    double edge = 0.0;
    for (std::size_t i = 0; i < f.n_t(); ++i)
        edge = std::max({edge, std::abs(f(i, 0)), std::abs(f(i, f.n_s() - 1))});
    for (std::size_t p = 0; p < f.n_s(); ++p)
        edge = std::max({edge, std::abs(f(0, p)), std::abs(f(f.n_t() - 1, p))});
    DecayReport r;
    r.boundary_ratio = peak > 0.0 ? edge / peak : 0.0;
    r.ok = r.boundary_ratio <= tol;
    return r;
}

/// d^order f / du^order by multiplication with (i xi)^order in Fourier space.
/// The Nyquist bin is dropped for odd orders.
inline GridFunction1D spectral_derivative(const GridFunction1D &f, int order = 1) {
    if (order == 0)
        return f;
    auto F = fft(f.values());
    const std::size_t n = f.n();
    for (std::size_t k = 0; k < n; ++k) {
        if (order % 2 == 1 && k == n / 2) {
            F[k] = 0.0;
            continue;
        }
        F[k] *= detail::ipow(complex(0.0, wavenumber(k, n, f.dx())), order);
    }
    return GridFunction1D(f.half_extent(), n, ifft(F));
}

/// Partial derivative d_t^mt d_s^ms of a 2D grid function, spectrally.
inline GridFunction2D spectral_partial(const GridFunction2D &f, int mt, int ms) {
    if (mt == 0 && ms == 0)
        return f;
    const std::size_t nt = f.n_t(), ns = f.n_s();
    auto F = fft2(f.values(), static_cast<int>(nt), static_cast<int>(ns));
    for (std::size_t i = 0; i < nt; ++i) {
        complex ft = (mt % 2 == 1 && i == nt / 2)
                         ? complex{}
                         : detail::ipow(complex(0.0, wavenumber(i, nt, f.dt())), mt);
        for (std::size_t p = 0; p < ns; ++p) {
            complex fs = (ms % 2 == 1 && p == ns / 2)
                             ? complex{}
                             : detail::ipow(complex(0.0, wavenumber(p, ns, f.ds())), ms);
            F[i * ns + p] *= ft * fs;
        }
    }
    GridFunction2D out = f.zeros_like();
    out.values() = ifft2(F, static_cast<int>(nt), static_cast<int>(ns));
    return out;
}

} // namespace nctorus
