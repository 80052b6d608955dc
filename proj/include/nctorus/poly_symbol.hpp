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
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "nctorus/error.hpp"

namespace nctorus {

using rational = boost::multiprecision::cpp_rational;

/// Exact Gaussian rational re + i im.
struct GaussRat {
    rational re;
    rational im;

    GaussRat() = default;
    GaussRat(rational r, rational i = 0) : re(std::move(r)), im(std::move(i)) {}
    GaussRat(long long r) : re(r), im(0) {}

    /// Exact conversion; every finite double is a dyadic rational.
    static GaussRat from_complex(std::complex<double> z) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw input_error("coeff", "non-finite coefficient");
        return {rational(z.real()), rational(z.imag())};
    }

    static GaussRat i() { return {0, 1}; }

    bool is_zero() const { return re == 0 && im == 0; }
    std::complex<double> to_complex() const {
        return {static_cast<double>(re), static_cast<double>(im)};
    }

    friend GaussRat operator+(const GaussRat &a, const GaussRat &b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussRat operator-(const GaussRat &a, const GaussRat &b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussRat operator-(const GaussRat &a) { return {-a.re, -a.im}; }
    friend GaussRat operator*(const GaussRat &a, const GaussRat &b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    GaussRat &operator+=(const GaussRat &b) {
        re += b.re;
        im += b.im;
        return *this;
    }
    friend bool operator==(const GaussRat &a, const GaussRat &b) {
        return a.re == b.re && a.im == b.im;
    }
};

/// (-i)^k / (m^k k!) exactly.
inline GaussRat moyal_prefactor(int k, int m) {
    GaussRat c(1);
    rational denom = 1;
    for (int j = 1; j <= k; ++j) {
        c = c * GaussRat(0, -1);
        denom *= m * j;
    }
    return {c.re / denom, c.im / denom};
}

/// A polynomial in nvars commuting variables with exact Gaussian rational
/// coefficients. Zero coefficients are never stored.
class PolySymbol {
public:
    using Exponents = std::vector<int>;

    explicit PolySymbol(int nvars = 2) : nvars_(nvars) {
        if (nvars < 1)
            throw input_error("nvars", "need at least one variable");
    }

    static PolySymbol constant(int nvars, const GaussRat &c) {
        PolySymbol p(nvars);
        p.add_term(Exponents(static_cast<std::size_t>(nvars), 0), c);
        return p;
    }

    /// The coordinate x_{index}, 1-based.
    static PolySymbol variable(int nvars, int index) {
        if (index < 1 || index > nvars)
            throw input_error("var", "variable index out of range");
        Exponents e(static_cast<std::size_t>(nvars), 0);
        e[static_cast<std::size_t>(index - 1)] = 1;
        PolySymbol p(nvars);
        p.add_term(e, GaussRat(1));
        return p;
    }

    int nvars() const noexcept { return nvars_; }
    const std::map<Exponents, GaussRat> &terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    void add_term(const Exponents &e, const GaussRat &c) {
        if (static_cast<int>(e.size()) != nvars_)
            throw input_error("exps", "exponent vector has wrong length");
        for (int x : e)
            if (x < 0)
                throw input_error("exps", "exponents must be non-negative");
        if (c.is_zero())
            return;
        auto [it, inserted] = terms_.emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero())
                terms_.erase(it);
        }
    }

    GaussRat coefficient(const Exponents &e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? GaussRat() : it->second;
    }

    int degree() const {
        int d = 0;
        for (const auto &[e, c] : terms_) {
            int s = 0;
            for (int x : e)
                s += x;
            d = std::max(d, s);
        }
        return d;
    }

    /// Highest power of x_{index} (1-based) present.
    int degree_in(int index) const {
        int d = 0;
        for (const auto &[e, c] : terms_)
            d = std::max(d, e[static_cast<std::size_t>(index - 1)]);
        return d;
    }

    friend PolySymbol operator+(PolySymbol a, const PolySymbol &b) {
        a.require_same(b);
        for (const auto &[e, c] : b.terms_)
            a.add_term(e, c);
        return a;
    }
    friend PolySymbol operator-(PolySymbol a, const PolySymbol &b) {
        a.require_same(b);
        for (const auto &[e, c] : b.terms_)
            a.add_term(e, -c);
        return a;
    }
    friend PolySymbol operator*(const GaussRat &s, const PolySymbol &a) {
        PolySymbol out(a.nvars_);
        for (const auto &[e, c] : a.terms_)
            out.add_term(e, s * c);
        return out;
    }
    friend PolySymbol operator*(const PolySymbol &a, const PolySymbol &b) {
        a.require_same(b);
        PolySymbol out(a.nvars_);
        Exponents e(static_cast<std::size_t>(a.nvars_));
        for (const auto &[ea, ca] : a.terms_) {
            for (const auto &[eb, cb] : b.terms_) {
                for (std::size_t i = 0; i < e.size(); ++i)
                    e[i] = ea[i] + eb[i];
                out.add_term(e, ca * cb);
            }
        }
        return out;
    }
    friend bool operator==(const PolySymbol &a, const PolySymbol &b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

    /// d^order / dx_{index}^order, 1-based index.
    PolySymbol derivative(int index, int order = 1) const {
        if (index < 1 || index > nvars_)
            throw input_error("var", "variable index out of range");
        PolySymbol out(nvars_);
        const auto v = static_cast<std::size_t>(index - 1);
        for (const auto &[e, c] : terms_) {
            if (e[v] < order)
                continue;
            rational f = 1;
            for (int j = 0; j < order; ++j)
                f *= e[v] - j;
            Exponents e2 = e;
            e2[v] -= order;
            out.add_term(e2, c * GaussRat(f));
        }
        return out;
    }

    std::complex<double> evaluate(const std::vector<double> &x) const {
        if (static_cast<int>(x.size()) != nvars_)
            throw input_error("x", "point has wrong dimension");
        std::complex<double> acc{};
        for (const auto &[e, c] : terms_) {
            double m = 1.0;
            for (std::size_t i = 0; i < e.size(); ++i)
                m *= std::pow(x[i], e[i]);
            acc += c.to_complex() * m;
        }
        return acc;
    }

    /// f(y) g(z) as a polynomial in (y, z).
    friend PolySymbol tensor(const PolySymbol &f, const PolySymbol &g) {
        PolySymbol out(f.nvars_ + g.nvars_);
        Exponents e(static_cast<std::size_t>(f.nvars_ + g.nvars_));
        for (const auto &[ef, cf] : f.terms_) {
            for (const auto &[eg, cg] : g.terms_) {
                std::copy(ef.begin(), ef.end(), e.begin());
                std::copy(eg.begin(), eg.end(), e.begin() + f.nvars_);
                out.add_term(e, cf * cg);
            }
        }
        return out;
    }

    /// Restriction of F(y, z) (2m variables) to the diagonal y = z = x.
    PolySymbol diagonal() const {
        if (nvars_ % 2 != 0)
            throw input_error("nvars", "diagonal restriction needs an even variable count");
        const int m = nvars_ / 2;
        PolySymbol out(m);
        Exponents e(static_cast<std::size_t>(m));
        for (const auto &[ef, c] : terms_) {
            for (int i = 0; i < m; ++i)
                e[static_cast<std::size_t>(i)] =
                    ef[static_cast<std::size_t>(i)] + ef[static_cast<std::size_t>(i + m)];
            out.add_term(e, c);
        }
        return out;
    }

private:
    void require_same(const PolySymbol &b) const {
        if (nvars_ != b.nvars_)
            throw input_error("nvars", "symbols have different variable counts");
    }

    int nvars_;
    std::map<Exponents, GaussRat> terms_;
};

/// sum_k hbar^k coeffs[k], truncated at order K = coeffs.size() - 1.
struct HbarSeries {
    std::vector<PolySymbol> coeffs;

    int order() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
    const PolySymbol &operator[](std::size_t k) const { return coeffs[k]; }

    friend HbarSeries operator-(const HbarSeries &a, const HbarSeries &b) {
        if (a.coeffs.size() != b.coeffs.size())
            throw input_error("order", "series orders differ");
        HbarSeries out;
        for (std::size_t k = 0; k < a.coeffs.size(); ++k)
            out.coeffs.push_back(a.coeffs[k] - b.coeffs[k]);
        return out;
    }
    friend bool operator==(const HbarSeries &a, const HbarSeries &b) {
        return a.coeffs == b.coeffs;
    }
};

} // namespace nctorus
