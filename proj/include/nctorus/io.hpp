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
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "nctorus/circle.hpp"
#include "nctorus/error.hpp"
#include "nctorus/gns.hpp"
#include "nctorus/grid.hpp"
#include "nctorus/heisenberg.hpp"
#include "nctorus/inner_solver.hpp"
#include "nctorus/lattice.hpp"
#include "nctorus/matrep.hpp"
#include "nctorus/phase.hpp"
#include "nctorus/poly_symbol.hpp"
#include "nctorus/torus.hpp"

namespace nctorus::io {

using json = nlohmann::ordered_json;

/// Parses text, reporting syntax errors with their byte offset.
inline json parse(const std::string &text, const std::string &what = "document") {
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        throw input_error(what, "malformed JSON at byte " + std::to_string(e.byte) + ": " +
                                    e.what());
    }
}

namespace detail {

inline std::string join(const std::string &path, const std::string &key) {
    return path.empty() ? key : path + "." + key;
}

inline std::string at(const std::string &path, std::size_t i) {
    return path + "[" + std::to_string(i) + "]";
}

inline const json &member(const json &j, const std::string &key, const std::string &path) {
    if (!j.is_object())
        throw input_error(path.empty() ? "document" : path, "expected an object");
    auto it = j.find(key);
    if (it == j.end())
        throw input_error(join(path, key), "missing field");
    return *it;
}

inline double number(const json &j, const std::string &path) {
    if (!j.is_number())
        throw input_error(path, "expected a number");
    double v = j.get<double>();
    if (!std::isfinite(v))
        throw input_error(path, "non-finite number");
    return v;
}

inline std::int64_t integer(const json &j, const std::string &path) {
    if (!j.is_number_integer())
        throw input_error(path, "expected an integer");
    return j.get<std::int64_t>();
}

inline const json &array(const json &j, const std::string &path) {
    if (!j.is_array())
        throw input_error(path, "expected an array");
    return j;
}

} // namespace detail

inline complex read_complex(const json &j, const std::string &path) {
    const auto &a = detail::array(j, path);
    if (a.size() != 2)
        throw input_error(path, "expected [re, im]");
    return {detail::number(a[0], detail::at(path, 0)), detail::number(a[1], detail::at(path, 1))};
}

inline json write_complex(complex z) { return json::array({z.real(), z.imag()}); }

inline std::vector<complex> read_complex_list(const json &j, const std::string &path) {
    const auto &a = detail::array(j, path);
    std::vector<complex> v;
    v.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        v.push_back(read_complex(a[i], detail::at(path, i)));
    return v;
}

inline json write_complex_list(const std::vector<complex> &v) {
    json a = json::array();
    for (auto z : v)
        a.push_back(write_complex(z));
    return a;
}

// ---- PhaseQ ----------------------------------------------------------------

inline PhaseQ read_phase(const json &j, const std::string &path = "q") {
    if (!j.is_object())
        throw input_error(path, "expected {\"rational\": [p, N]} or {\"theta\": x}");
    if (j.contains("rational")) {
        const auto &r = detail::array(j["rational"], detail::join(path, "rational"));
        if (r.size() != 2)
            throw input_error(detail::join(path, "rational"), "expected [p, N]");
        return PhaseQ::rational(detail::integer(r[0], detail::join(path, "rational[0]")),
                                detail::integer(r[1], detail::join(path, "rational[1]")));
    }
    if (j.contains("theta"))
        return PhaseQ::irrational(detail::number(j["theta"], detail::join(path, "theta")));
    throw input_error(path, "expected {\"rational\": [p, N]} or {\"theta\": x}");
}

inline json write_phase(const PhaseQ &q) {
    if (q.is_rational())
        return {{"rational", json::array({q.numerator(), q.order()})}};
    return {{"theta", q.theta()}};
}

// ---- CoeffLattice2 / TorusElement -------------------------------------------

inline CoeffLattice2 read_lattice(const json &j, const std::string &path = "") {
    auto rk = detail::integer(detail::member(j, "radius_k", path), detail::join(path, "radius_k"));
    auto rl = detail::integer(detail::member(j, "radius_l", path), detail::join(path, "radius_l"));
    if (rk < 0 || rl < 0 || rk > 4096 || rl > 4096)
        throw input_error(detail::join(path, "radius"), "radii must lie in 0..4096");
    auto cpath = detail::join(path, "coeffs");
    auto v = read_complex_list(detail::member(j, "coeffs", path), cpath);
    std::size_t expected = static_cast<std::size_t>(2 * rk + 1) * static_cast<std::size_t>(2 * rl + 1);
    if (v.size() != expected)
        throw input_error(cpath, "expected " + std::to_string(expected) +
                                     " entries for the box, got " + std::to_string(v.size()));
    return CoeffLattice2(static_cast<int>(rk), static_cast<int>(rl), std::move(v));
}

inline json write_lattice(const CoeffLattice2 &f) {
    return {{"radius_k", f.radius_k()},
            {"radius_l", f.radius_l()},
            {"coeffs", write_complex_list(f.coeffs())}};
}

/// {"coeffs": <lattice>, "q": <phase>}.
inline TorusElement read_element(const json &j, const std::string &path = "") {
    return {read_lattice(detail::member(j, "coeffs", path), detail::join(path, "coeffs")),
            read_phase(detail::member(j, "q", path), detail::join(path, "q"))};
}

inline json write_element(const TorusElement &f) {
    return {{"coeffs", write_lattice(f.coeffs)}, {"q", write_phase(f.q)}};
}

// ---- matrices ---------------------------------------------------------------

inline json write_matrix(const Eigen::MatrixXcd &m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            row.push_back(write_complex(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

inline json write_vector(const Eigen::VectorXcd &v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        a.push_back(write_complex(v[i]));
    return a;
}

inline Eigen::VectorXcd read_vector(const json &j, const std::string &path) {
    auto v = read_complex_list(j, path);
    Eigen::VectorXcd out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i)
        out[static_cast<Eigen::Index>(i)] = v[i];
    return out;
}

// ---- circle -----------------------------------------------------------------

inline CircleSpec read_circle_spec(const json &j, const std::string &path = "spec") {
    auto get = [&](const char *k) {
        return static_cast<int>(detail::integer(detail::member(j, k, path), detail::join(path, k)));
    };
    return CircleSpec(get("a"), get("b"), get("a_prime"), get("b_prime"),
                      read_phase(detail::member(j, "q", path), detail::join(path, "q")));
}

inline json write_circle_spec(const CircleSpec &s) {
    return {{"a", s.a()}, {"b", s.b()}, {"a_prime", s.a_prime()}, {"b_prime", s.b_prime()},
            {"q", write_phase(s.q())}};
}

struct CircleElement {
    CircleSpec spec;
    std::vector<CircleTerm> terms;
};

inline CircleElement read_circle(const json &j) {
    CircleElement c{read_circle_spec(detail::member(j, "spec", "")), {}};
    const auto &a = detail::array(detail::member(j, "coeffs", ""), "coeffs");
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto p = detail::at("coeffs", i);
        auto get = [&](const char *k) {
            return static_cast<int>(detail::integer(detail::member(a[i], k, p), detail::join(p, k)));
        };
        CircleTerm t{get("j"), get("s"), get("t"),
                     {detail::number(detail::member(a[i], "re", p), detail::join(p, "re")),
                      detail::number(detail::member(a[i], "im", p), detail::join(p, "im"))}};
        if (t.s < 0 || t.s >= c.spec.order() || t.t < 0 || t.t >= c.spec.order())
            throw input_error(p, "exponents s, t must lie in 0..N-1");
        c.terms.push_back(t);
    }
    return c;
}

inline json write_circle(const CircleElement &c) {
    json terms = json::array();
    for (const auto &t : c.terms)
        terms.push_back({{"j", t.j}, {"s", t.s}, {"t", t.t}, {"re", t.value.real()},
                         {"im", t.value.imag()}});
    return {{"spec", write_circle_spec(c.spec)}, {"coeffs", terms}};
}

// ---- grid functions ---------------------------------------------------------

inline GridFunction1D read_grid1d(const json &j, const std::string &path = "") {
    auto L = detail::number(detail::member(j, "half_extent", path), detail::join(path, "half_extent"));
    auto n = detail::integer(detail::member(j, "n", path), detail::join(path, "n"));
    if (n <= 0)
        throw input_error(detail::join(path, "n"), "must be positive");
    auto v = read_complex_list(detail::member(j, "values", path), detail::join(path, "values"));
    return GridFunction1D(L, static_cast<std::size_t>(n), std::move(v));
}

inline json write_grid1d(const GridFunction1D &f) {
    return {{"half_extent", f.half_extent()}, {"n", f.n()}, {"values", write_complex_list(f.values())}};
}

inline GridFunction2D read_grid2d(const json &j, const std::string &path = "") {
    auto num = [&](const char *k) {
        return detail::number(detail::member(j, k, path), detail::join(path, k));
    };
    auto cnt = [&](const char *k) {
        auto v = detail::integer(detail::member(j, k, path), detail::join(path, k));
        if (v <= 0)
            throw input_error(detail::join(path, k), "must be positive");
        return static_cast<std::size_t>(v);
    };
    auto nt = cnt("n_t"), ns = cnt("n_s");
    auto Lt = num("half_extent_t"), Ls = num("half_extent_s");
    auto v = read_complex_list(detail::member(j, "values", path), detail::join(path, "values"));
    return GridFunction2D(Lt, Ls, nt, ns, std::move(v));
}

inline json write_grid2d(const GridFunction2D &f) {
    return {{"half_extent_t", f.half_extent_t()},
            {"half_extent_s", f.half_extent_s()},
            {"n_t", f.n_t()},
            {"n_s", f.n_s()},
            {"values", write_complex_list(f.values())}};
}

// ---- polynomial symbols -----------------------------------------------------

inline PolySymbol read_poly(const json &j, const std::string &path = "") {
    auto nv = detail::integer(detail::member(j, "nvars", path), detail::join(path, "nvars"));
    if (nv < 1 || nv > 64)
        throw input_error(detail::join(path, "nvars"), "must lie in 1..64");
    PolySymbol p(static_cast<int>(nv));
    auto tpath = detail::join(path, "terms");
    const auto &a = detail::array(detail::member(j, "terms", path), tpath);
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto ip = detail::at(tpath, i);
        auto epath = detail::join(ip, "exps");
        const auto &ex = detail::array(detail::member(a[i], "exps", ip), epath);
        if (static_cast<std::int64_t>(ex.size()) != nv)
            throw input_error(epath, "expected " + std::to_string(nv) + " exponents");
        PolySymbol::Exponents e;
        for (std::size_t k = 0; k < ex.size(); ++k) {
            auto v = detail::integer(ex[k], detail::at(epath, k));
            if (v < 0 || v > 1000)
                throw input_error(detail::at(epath, k), "exponent must lie in 0..1000");
            e.push_back(static_cast<int>(v));
        }
        complex c{detail::number(detail::member(a[i], "re", ip), detail::join(ip, "re")),
                  detail::number(detail::member(a[i], "im", ip), detail::join(ip, "im"))};
        p.add_term(e, GaussRat::from_complex(c));
    }
    return p;
}

inline json write_poly(const PolySymbol &p) {
    json terms = json::array();
    for (const auto &[e, c] : p.terms()) {
        auto z = c.to_complex();
        terms.push_back({{"exps", e}, {"re", z.real()}, {"im", z.imag()},
                         {"re_exact", c.re.str()}, {"im_exact", c.im.str()}});
    }
    return {{"nvars", p.nvars()}, {"terms", terms}};
}

inline json write_series(const HbarSeries &s) {
    json a = json::array();
    for (const auto &c : s.coeffs)
        a.push_back(write_poly(c));
    return {{"order", s.order()}, {"coeffs", a}};
}

// ---- finite algebras and forms ----------------------------------------------

inline FiniteAlgebra read_algebra(const json &j, const std::string &path = "algebra") {
    const auto &kind = detail::member(j, "kind", path);
    if (!kind.is_string())
        throw input_error(detail::join(path, "kind"), "expected a string");
    auto q = read_phase(detail::member(j, "q", path), detail::join(path, "q"));
    if (kind == "torus_quotient")
        return FiniteAlgebra::torus_quotient(q);
    if (kind == "truncated_box") {
        auto rk = detail::integer(detail::member(j, "radius_k", path), detail::join(path, "radius_k"));
        auto rl = detail::integer(detail::member(j, "radius_l", path), detail::join(path, "radius_l"));
        if (rk < 0 || rl < 0 || rk > 8 || rl > 8)
            throw input_error(detail::join(path, "radius"), "box radii must lie in 0..8");
        return FiniteAlgebra::truncated_box(static_cast<int>(rk), static_cast<int>(rl), q);
    }
    throw input_error(detail::join(path, "kind"), "expected \"torus_quotient\" or \"truncated_box\"");
}

inline json write_algebra(const FiniteAlgebra &A) {
    json j = {{"kind", A.kind() == FiniteAlgebra::Kind::torus_quotient ? "torus_quotient"
                                                                        : "truncated_box"}};
    if (A.kind() == FiniteAlgebra::Kind::truncated_box) {
        int rk = 0, rl = 0;
        for (auto [k, l] : A.basis()) {
            rk = std::max(rk, k);
            rl = std::max(rl, l);
        }
        j["radius_k"] = rk;
        j["radius_l"] = rl;
    }
    j["q"] = write_phase(A.q());
    return j;
}

inline json write_basis(const FiniteAlgebra &A) {
    json b = json::array();
    for (auto [k, l] : A.basis())
        b.push_back(json::array({k, l}));
    return b;
}

/// {"algebra": ..., "values": [[re, im], ...]} over the algebra's basis order.
inline std::pair<FiniteAlgebra, PositiveForm> read_form(const json &j) {
    auto A = read_algebra(detail::member(j, "algebra", ""));
    auto v = read_vector(detail::member(j, "values", ""), "values");
    if (static_cast<std::size_t>(v.size()) != A.dim())
        throw input_error("values", "expected " + std::to_string(A.dim()) + " values, got " +
                                        std::to_string(v.size()));
    return {std::move(A), PositiveForm{v}};
}

inline json write_form(const FiniteAlgebra &A, const PositiveForm &phi) {
    return {{"algebra", write_algebra(A)}, {"basis", write_basis(A)},
            {"values", write_vector(phi.values)}};
}

inline json write_triplet(const GnsTriplet &T) {
    return {{"quotient_dim", T.quotient_dim},
            {"basis", write_matrix(T.basis)},
            {"pi_U", write_matrix(T.pi_U)},
            {"pi_V", write_matrix(T.pi_V)},
            {"omega", write_vector(T.omega)},
            {"tolerance", T.tolerance},
            {"reconstruction_residual", T.reconstruction_residual},
            {"homomorphism_residual", T.homomorphism_residual},
            {"star_residual", T.star_residual},
            {"left_ideal_residual", T.left_ideal_residual}};
}

} // namespace nctorus::io
