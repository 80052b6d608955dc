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

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "nctorus/io.hpp"
#include "nctorus/nctorus.hpp"
#include "nctorus/suite.hpp"

namespace nctorus::cli {

using json = io::json;

/// Library operation -> the subcommand that exposes it.
inline const std::vector<std::pair<std::string, std::string>> &coverage_table() {
    static const std::vector<std::pair<std::string, std::string>> table = {
        {"seminorm", "torus-seminorm"},
        {"to_primed", "torus-adjoint"},
        {"read_json", "torus-mul"},
        {"write_json", "torus-mul"},
        {"q_mul", "torus-mul"},
        {"adjoint", "torus-adjoint"},
        {"trace", "torus-seminorm"},
        {"l2_state", "torus-seminorm"},
        {"d_power", "torus-derive"},
        {"inner_derivation", "torus-mul"},
        {"check_derivation_relation", "torus-check-derivation"},
        {"apply_derivation", "torus-derive"},
        {"smooth_seminorm", "torus-seminorm"},
        {"reorder_phase", "torus-mul"},
        {"clock_shift", "matrep-eval"},
        {"eval_section", "matrep-eval"},
        {"equivariance_check", "matrep-eval"},
        {"circle_eval", "circle-check"},
        {"circle_check_relations", "circle-check"},
        {"apply_Q", "weyl-check"},
        {"apply_P", "weyl-check"},
        {"weyl_Q", "weyl-check"},
        {"weyl_P", "weyl-check"},
        {"calibrate_q", "weyl-check"},
        {"rep_lattice_measure", "rep-lattice"},
        {"solve_inner_generator", "solve-inner"},
        {"twisted_conv", "twisted-conv"},
        {"other_twisted_conv", "twisted-conv"},
        {"gauge_iso", "twisted-conv"},
        {"heisenberg_group_conv", "twisted-conv"},
        {"moyal_star", "moyal-star"},
        {"half_moyal", "moyal-star"},
        {"fourier_bridge_error", "fourier-bridge"},
        {"hbar_smoothness_probe", "hbar-probe"},
        {"is_positive", "gns-check"},
        {"gns_build", "gns-build"},
        {"state_action", "gns-check"},
        {"schwarz_check", "gns-check"},
    };
    return table;
}

namespace detail {

/// Inline JSON (leading '{') or a path to a JSON file.
inline json load(const std::string &arg, const std::string &field) {
    std::size_t i = arg.find_first_not_of(" \t\r\n");
    if (i != std::string::npos && (arg[i] == '{' || arg[i] == '['))
        return io::parse(arg, field);
    std::ifstream in(arg);
    if (!in)
        throw input_error(field, "cannot open '" + arg + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return io::parse(ss.str(), field);
}

/// --q accepts JSON ({"rational":[p,N]} / {"theta":x}), "p/N", or a bare theta.
inline PhaseQ parse_q(const std::string &s) {
    if (!s.empty() && s.front() == '{')
        return io::read_phase(io::parse(s, "q"), "q");
    try {
        std::size_t pos = 0;
        if (auto slash = s.find('/'); slash != std::string::npos) {
            long long p = std::stoll(s.substr(0, slash), &pos);
            if (pos != slash)
                throw std::invalid_argument(s);
            std::string den = s.substr(slash + 1);
            long long n = std::stoll(den, &pos);
            if (pos != den.size())
                throw std::invalid_argument(s);
            return PhaseQ::rational(p, n);
        }
        double theta = std::stod(s, &pos);
        if (pos != s.size())
            throw std::invalid_argument(s);
        return PhaseQ::irrational(theta);
    } catch (const input_error &) {
        throw;
    } catch (const std::exception &) {
        throw input_error("q", "cannot parse '" + s + "'");
    }
}

inline std::vector<double> parse_numbers(const std::string &s, const std::string &field) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(item, &pos));
            while (pos < item.size() && item[pos] == ' ')
                ++pos;
            if (pos != item.size())
                throw std::invalid_argument(item);
        } catch (const std::exception &) {
            throw input_error(field, "cannot parse number '" + item + "'");
        }
    }
    return out;
}

inline complex parse_complex(const std::string &s, const std::string &field) {
    auto v = parse_numbers(s, field);
    if (v.size() != 2)
        throw input_error(field, "expected re,im");
    return {v[0], v[1]};
}

/// "m1,n1;m2,n2" -> [(m1,n1), (m2,n2)].
inline std::vector<std::pair<int, int>> parse_pairs(const std::string &s, const std::string &field) {
    std::vector<std::pair<int, int>> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ';')) {
        if (item.empty())
            continue;
        auto v = parse_numbers(item, field);
        if (v.size() != 2)
            throw input_error(field, "expected pairs m,n separated by ';'");
        out.emplace_back(static_cast<int>(v[0]), static_cast<int>(v[1]));
    }
    return out;
}

/// "2,1,-3" -> letters S_2 S_1 S_3^{-1}.
inline std::vector<Letter> parse_word(const std::string &s) {
    std::vector<Letter> w;
    for (double x : parse_numbers(s, "word")) {
        int i = static_cast<int>(x);
        if (i == 0 || static_cast<double>(i) != x)
            throw input_error("word", "letters are nonzero integers");
        w.push_back({i < 0 ? -i : i, i < 0 ? -1 : 1});
    }
    return w;
}

struct Common {
    std::optional<std::string> q;
    double hbar = 1.0;
    std::optional<double> tol;
    std::uint64_t seed = 42;
    std::string out_path;
    std::size_t grid_n = 512;
    double grid_extent = 16.0;
    int order = 4;
};

inline void check_q(const Common &c, const PhaseQ &q) {
    if (c.q)
        require_same_q(parse_q(*c.q), q);
}

/// Thrown to report a tolerance failure together with a full JSON report.
struct report_failure {
    json report;
    std::string message;
};

inline GridFunction1D default_grid(const Common &c) {
    return default_probe(c.grid_extent, c.grid_n);
}

} // namespace detail

/// Runs the command line; returns the exit code (0 ok, 1 tolerance failure,
/// 2 input error).
inline int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    using detail::Common;
    Common c;
    CLI::App app{"Noncommutative torus and Heisenberg-plane toolkit", "nctorus"};
    app.require_subcommand(1);
    auto add_common = [&](CLI::App *s) {
        s->add_option("--q", c.q, "deformation parameter: {\"rational\":[p,N]}, p/N, or theta");
        s->add_option("--hbar", c.hbar, "Planck parameter");
        s->add_option("--tol", c.tol, "tolerance override");
        s->add_option("--seed", c.seed, "seed for randomized runs");
        s->add_option("--out", c.out_path, "write JSON here instead of stdout");
        s->add_option("--grid-n", c.grid_n, "samples per axis of generated grids");
        s->add_option("--grid-extent", c.grid_extent, "half extent of generated grids");
        s->add_option("--order", c.order, "series order K");
    };

    std::vector<std::string> inputs;
    bool flag_commutator = false, flag_primed = false, flag_half = false, flag_poisson = false;
    bool flag_clock = false, flag_expand = false;
    std::string word, powers, du_path, dv_path, state_path, family_path, kind = "plain";
    std::string gauge, u_str = "1,0", v_str = "1,0", z_str, apply, f_path, action, basis_order;
    int n_gen = 0, seminorm_m = 0;
    double t_param = 0.7, s_param = 0.5, sigma = 1.0, delta = 1e-2;
    std::optional<double> calibrate;

    auto *mul = app.add_subcommand("torus-mul", "twisted product, commutator, or word reordering");
    add_common(mul);
    mul->add_option("inputs", inputs, "two torus elements");
    mul->add_flag("--commutator", flag_commutator, "ad(A) B = AB - BA");
    mul->add_option("--word", word, "reorder a word of generators, e.g. 2,1,-3");
    mul->add_option("--n", n_gen, "number of generators for --word");

    auto *adj = app.add_subcommand("torus-adjoint", "involution or primed coefficients");
    add_common(adj);
    adj->add_option("inputs", inputs, "torus element")->expected(1);
    adj->add_flag("--primed", flag_primed, "f'_{k,l} = f_{k,l} q^{kl/2}");

    auto *sem = app.add_subcommand("torus-seminorm", "seminorm, trace, l2 state, smooth seminorm");
    add_common(sem);
    sem->add_option("inputs", inputs, "torus element")->expected(1);
    sem->add_option("--m", seminorm_m, "weight exponent m");
    sem->add_option("--word", word, "derivation word m1,n1;m2,n2 for the smooth seminorm");
    sem->add_option("--state", state_path, "element g of the vector state tr(g* f g)");

    auto *der = app.add_subcommand("torus-derive", "D_U^m D_V^n or a derivation given by D(U), D(V)");
    add_common(der);
    der->add_option("inputs", inputs, "torus element")->expected(1);
    der->add_option("--powers", powers, "m,n for D_U^m D_V^n");
    der->add_option("--du", du_path, "lattice of D(U)");
    der->add_option("--dv", dv_path, "lattice of D(V)");

    auto *chk = app.add_subcommand("torus-check-derivation", "consistency relation of D(U), D(V)");
    add_common(chk);
    chk->add_option("--du", du_path, "lattice of D(U)");
    chk->add_option("--dv", dv_path, "lattice of D(V)");

    auto *mat = app.add_subcommand("matrep-eval", "clock-shift matrices and section evaluation");
    add_common(mat);
    mat->add_option("inputs", inputs, "torus element");
    mat->add_option("--u", u_str, "unit complex u as re,im");
    mat->add_option("--v", v_str, "unit complex v as re,im");
    mat->add_flag("--clock-shift", flag_clock, "print U0 and V0 for --q");
    mat->add_flag("--expand", flag_expand, "print the c_{k,l,s,t} family of the element");
    mat->add_option("--equivariance", family_path, "family {\"q\":..,\"entries\":[...]} to check");

    auto *cir = app.add_subcommand("circle-check", "noncommutative circle relations and evaluation");
    add_common(cir);
    cir->add_option("inputs", inputs, "circle element")->expected(1);
    cir->add_option("--z", z_str, "evaluate at z = re,im");

    auto *wey = app.add_subcommand("weyl-check", "Q, P, Weyl operators and q calibration");
    add_common(wey);
    wey->add_option("inputs", inputs, "1D grid function (default: Gaussian probe)");
    wey->add_option("--apply", apply, "Q, P, weylQ or weylP: print the transformed function");
    wey->add_option("--t", t_param, "parameter of e^{itQ}");
    wey->add_option("--s", s_param, "parameter of e^{isP}");
    wey->add_option("--calibrate", calibrate, "lattice spacing sigma for calibrate_q");

    auto *rep = app.add_subcommand("rep-lattice", "operator of a lattice measure applied to f");
    add_common(rep);
    rep->add_option("inputs", inputs, "lattice [1D grid function]");
    rep->add_option("--sigma", sigma, "lattice spacing");

    auto *inn = app.add_subcommand("solve-inner", "generator b of an inner derivation");
    add_common(inn);
    inn->add_option("inputs", inputs, "{\"a_Q\":grid,\"a_P\":grid,\"hbar\":h}")->expected(1);

    auto *tw = app.add_subcommand("twisted-conv", "twisted convolutions and the gauge map");
    add_common(tw);
    tw->add_option("inputs", inputs, "one or two 2D grid functions");
    tw->add_option("--kind", kind, "plain (*_hbar), other (*^_hbar), group, or rescaled");
    tw->add_option("--gauge", gauge, "forward or inverse: apply the gauge map to one input");

    auto *moy = app.add_subcommand("moyal-star", "Moyal and half-Moyal series");
    add_common(moy);
    moy->add_option("inputs", inputs, "two polynomial symbols");
    moy->add_flag("--half", flag_half, "half-Moyal product");
    moy->add_flag("--poisson", flag_poisson, "also print the Poisson bracket");

    auto *fb = app.add_subcommand("fourier-bridge", "Fourier-side versus Moyal-series error");
    add_common(fb);
    fb->add_option("inputs", inputs, "two 2D grid functions");

    auto *hp = app.add_subcommand("hbar-probe", "finite-difference smoothness in hbar");
    add_common(hp);
    hp->add_option("inputs", inputs, "two 2D grid functions");
    hp->add_option("--delta", delta, "finite-difference step");

    auto *gb = app.add_subcommand("gns-build", "GNS triplet of a positive form");
    add_common(gb);
    gb->add_option("inputs", inputs, "{\"algebra\":...,\"values\":[...]}")->expected(1);
    gb->add_option("--basis-order", basis_order, "orthonormalization order, e.g. 3,2,1,0");

    auto *gc = app.add_subcommand("gns-check", "positivity, Schwarz inequality, state action");
    add_common(gc);
    gc->add_option("inputs", inputs, "{\"algebra\":...,\"values\":[...]}")->expected(1);
    gc->add_option("--f", f_path, "coordinates [[re,im],...] of f for the Schwarz check");
    gc->add_option("--action", action, "coordinates of f for phi_f(g) = phi(f* g f)");

    auto *su = app.add_subcommand("suite", "acceptance battery");
    add_common(su);

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    auto need = [&](std::size_t n) {
        if (inputs.size() != n)
            throw input_error("inputs", "expected " + std::to_string(n) + " input(s), got " +
                                            std::to_string(inputs.size()));
    };
    auto elem = [&](std::size_t i) {
        auto f = io::read_element(detail::load(inputs[i], "input" + std::to_string(i)));
        detail::check_q(c, f.q);
        return f;
    };
    auto grid2 = [&](std::size_t i) {
        return io::read_grid2d(detail::load(inputs[i], "input" + std::to_string(i)));
    };
    auto warn_decay = [&](json &report, const GridFunction2D &g, const std::string &name) {
        auto d = boundary_decay(g);
        if (!d.ok) {
            report["warnings"].push_back(name + ": boundary mass " + std::to_string(d.boundary_ratio) +
                                         " exceeds 1e-10");
        }
    };
    auto lattice_arg = [&](const std::string &s, const std::string &field) {
        if (s.empty())
            return CoeffLattice2{};
        json j = detail::load(s, field);
        if (j.contains("q") && j.contains("coeffs") && j["coeffs"].is_object())
            return io::read_element(j, field).coeffs;
        return io::read_lattice(j, field);
    };
    auto q_or_default = [&]() { return c.q ? detail::parse_q(*c.q) : PhaseQ{}; };

    json report;
    int code = 0;
    try {
        if (mul->parsed()) {
            if (!word.empty()) {
                if (!inputs.empty())
                    throw input_error("inputs", "--word takes no inputs");
                auto r = reorder_phase(detail::parse_word(word), n_gen, q_or_default());
                report = {{"exponents", r.exponents}, {"phase_exponent", r.phase_exponent},
                          {"phase", io::write_complex(r.phase)}};
            } else {
                need(2);
                auto f = elem(0), g = elem(1);
                require_same_q(f.q, g.q);
                report = io::write_element(flag_commutator ? inner_derivation(f, g) : q_mul(f, g));
            }
        } else if (adj->parsed()) {
            auto f = elem(0);
            report = io::write_element(flag_primed ? TorusElement{to_primed(f.coeffs, f.q), f.q}
                                                   : adjoint(f));
        } else if (sem->parsed()) {
            auto f = elem(0);
            if (seminorm_m < 0)
                throw input_error("m", "must be non-negative");
            report = {{"seminorm", seminorm(f.coeffs, seminorm_m)},
                      {"m", seminorm_m},
                      {"trace", io::write_complex(trace(f))},
                      {"l2_state", l2_state(f)},
                      {"l2_state_via_trace", l2_state_via_trace(f)}};
            if (!word.empty() || !state_path.empty()) {
                TorusState st = TraceState{};
                if (!state_path.empty()) {
                    auto g = io::read_element(detail::load(state_path, "state"), "state");
                    require_same_q(g.q, f.q);
                    st = VectorState{g};
                }
                report["smooth_seminorm"] = smooth_seminorm(f, detail::parse_pairs(word, "word"), st);
            }
        } else if (der->parsed()) {
            auto f = elem(0);
            if (!powers.empty()) {
                auto p = detail::parse_numbers(powers, "powers");
                if (p.size() != 2)
                    throw input_error("powers", "expected m,n");
                report = io::write_element(d_power(f, static_cast<int>(p[0]), static_cast<int>(p[1])));
            } else {
                DerivationSpec d{lattice_arg(du_path, "du"), lattice_arg(dv_path, "dv"), f.q};
                report = io::write_element(apply_derivation(d, f, c.tol.value_or(1e-10)));
            }
        } else if (chk->parsed()) {
            DerivationSpec d{lattice_arg(du_path, "du"), lattice_arg(dv_path, "dv"), q_or_default()};
            auto r = check_derivation_relation(d, c.tol.value_or(1e-10));
            report = {{"ok", r.ok}, {"k", r.k}, {"l", r.l}, {"residual", r.residual}};
            if (!r.ok)
                throw detail::report_failure{report, "derivation relation violated"};
        } else if (mat->parsed()) {
            if (flag_clock) {
                auto [U0, V0] = clock_shift(q_or_default());
                report = {{"U0", io::write_matrix(U0)}, {"V0", io::write_matrix(V0)}};
            } else if (!family_path.empty()) {
                json j = detail::load(family_path, "equivariance");
                auto q = io::read_phase(io::detail::member(j, "q", ""), "q");
                detail::check_q(c, q);
                std::vector<SectionEntry> fam;
                const auto &e = io::detail::array(io::detail::member(j, "entries", ""), "entries");
                for (std::size_t i = 0; i < e.size(); ++i) {
                    auto p = io::detail::at("entries", i);
                    auto gi = [&](const char *k) {
                        return static_cast<int>(io::detail::integer(io::detail::member(e[i], k, p),
                                                                    io::detail::join(p, k)));
                    };
                    fam.push_back({gi("k"), gi("l"), gi("s"), gi("t"),
                                   {io::detail::number(io::detail::member(e[i], "re", p), p + ".re"),
                                    io::detail::number(io::detail::member(e[i], "im", p), p + ".im")}});
                }
                auto r = equivariance_check(fam, q);
                report = {{"ok", r.ok}};
                if (r.violation) {
                    const auto &v = *r.violation;
                    report["violation"] = {{"k", v.k}, {"l", v.l}, {"s", v.s}, {"t", v.t}};
                    throw detail::report_failure{report, "equivariance violated"};
                }
            } else {
                need(1);
                auto f = elem(0);
                if (flag_expand) {
                    json fam = json::array();
                    for (const auto &e : expand_section(f))
                        fam.push_back({{"k", e.k}, {"l", e.l}, {"s", e.s}, {"t", e.t},
                                       {"re", e.value.real()}, {"im", e.value.imag()}});
                    report = {{"q", io::write_phase(f.q)}, {"entries", fam}};
                } else {
                    report = {{"matrix", io::write_matrix(eval_section(
                                             f, detail::parse_complex(u_str, "u"),
                                             detail::parse_complex(v_str, "v")))}};
                }
            }
        } else if (cir->parsed()) {
            auto ce = io::read_circle(detail::load(inputs[0], "input0"));
            detail::check_q(c, ce.spec.q());
            if (!z_str.empty()) {
                report = {{"matrix", io::write_matrix(circle_eval(ce.terms, ce.spec,
                                                                  detail::parse_complex(z_str, "z")))}};
            } else {
                double r = circle_check_relations(ce.spec, circle_samples());
                double tol = c.tol.value_or(1e-12);
                report = {{"residual", r}, {"tolerance", tol}, {"samples", 16}};
                if (r > tol)
                    throw detail::report_failure{report, "circle relations violated"};
            }
        } else if (wey->parsed()) {
            GridFunction1D f = inputs.empty() ? detail::default_grid(c)
                                              : io::read_grid1d(detail::load(inputs[0], "input0"));
            if (calibrate) {
                auto q = calibrate_q(*calibrate, c.hbar, f);
                report = {{"sigma", *calibrate}, {"hbar", c.hbar}, {"q", io::write_phase(q)},
                          {"value", io::write_complex(q.value())}};
            } else if (!apply.empty()) {
                if (apply == "Q")
                    report = io::write_grid1d(apply_Q(f));
                else if (apply == "P")
                    report = io::write_grid1d(apply_P(f, c.hbar));
                else if (apply == "weylQ")
                    report = io::write_grid1d(weyl_Q(t_param, f));
                else if (apply == "weylP")
                    report = io::write_grid1d(weyl_P(s_param, f, c.hbar));
                else
                    throw input_error("apply", "expected Q, P, weylQ or weylP");
            } else {
                auto lhs = apply_Q(apply_P(f, c.hbar));
                auto rhs = apply_P(apply_Q(f), c.hbar);
                GridFunction1D diff = lhs, ihf = f;
                for (std::size_t j = 0; j < f.n(); ++j) {
                    diff[j] = lhs[j] - rhs[j];
                    ihf[j] = complex(0.0, c.hbar) * f[j];
                }
                auto a = weyl_Q(t_param, weyl_P(s_param, f, c.hbar));
                auto b = weyl_P(s_param, weyl_Q(t_param, f), c.hbar);
                for (auto &v : b.values())
                    v *= std::polar(1.0, -t_param * s_param * c.hbar);
                double comm = suite::detail::interior_rel(diff, ihf, f.n() / 8);
                double weyl = suite::detail::interior_rel(a, b, 0);
                double tol = c.tol.value_or(1e-8);
                report = {{"commutator_residual", comm}, {"weyl_residual", weyl}, {"tolerance", tol}};
                if (!boundary_decay(f).ok)
                    report["warnings"].push_back("input does not decay below 1e-10 at the boundary");
                if (comm > tol || weyl > tol)
                    throw detail::report_failure{report, "Weyl relations violated"};
            }
        } else if (rep->parsed()) {
            if (inputs.empty() || inputs.size() > 2)
                throw input_error("inputs", "expected a lattice and optionally a 1D grid function");
            auto lat = lattice_arg(inputs[0], "input0");
            GridFunction1D f = inputs.size() == 2 ? io::read_grid1d(detail::load(inputs[1], "input1"))
                                                  : detail::default_grid(c);
            report = io::write_grid1d(rep_lattice_measure(lat, sigma, c.hbar, f));
        } else if (inn->parsed()) {
            json j = detail::load(inputs[0], "input0");
            DerivationData d{io::read_grid2d(io::detail::member(j, "a_Q", ""), "a_Q"),
                             io::read_grid2d(io::detail::member(j, "a_P", ""), "a_P"),
                             j.contains("hbar") ? io::detail::number(j["hbar"], "hbar") : c.hbar};
            InnerSolveOptions opt;
            if (c.tol)
                opt.compatibility_tol = *c.tol;
            auto sol = solve_inner_generator(d, opt);
            report = {{"b", io::write_grid2d(sol.b)},
                      {"compatibility_residual", sol.compatibility_residual},
                      {"overlap_residual", sol.overlap_residual}};
        } else if (tw->parsed()) {
            if (!gauge.empty()) {
                need(1);
                if (gauge != "forward" && gauge != "inverse")
                    throw input_error("gauge", "expected forward or inverse");
                report = io::write_grid2d(gauge_iso(grid2(0), c.hbar,
                                                    gauge == "forward" ? GaugeDirection::forward
                                                                       : GaugeDirection::inverse));
            } else {
                need(2);
                auto a = grid2(0), b = grid2(1);
                GridFunction2D r = a.zeros_like();
                if (kind == "plain")
                    r = twisted_conv(a, b, c.hbar);
                else if (kind == "other")
                    r = other_twisted_conv(a, b, c.hbar);
                else if (kind == "group")
                    r = heisenberg_group_conv(a, b, c.hbar);
                else if (kind == "rescaled")
                    r = hbar_rescaled_conv(a, b, c.hbar);
                else
                    throw input_error("kind", "expected plain, other, group or rescaled");
                report = io::write_grid2d(r);
                warn_decay(report, a, "input0");
                warn_decay(report, b, "input1");
            }
        } else if (moy->parsed()) {
            need(2);
            auto f = io::read_poly(detail::load(inputs[0], "input0"));
            auto g = io::read_poly(detail::load(inputs[1], "input1"));
            if (c.order < 0)
                throw input_error("order", "must be non-negative");
            report = {{"series", io::write_series(flag_half ? half_moyal(f, g, c.order)
                                                            : moyal_star(f, g, c.order))}};
            if (flag_poisson)
                report["poisson"] = io::write_poly(poisson_bracket(f, g));
        } else if (fb->parsed()) {
            need(2);
            auto f = grid2(0), g = grid2(1);
            double e = fourier_bridge_error(f, g, c.hbar, c.order);
            report = {{"hbar", c.hbar}, {"order", c.order}, {"error", e}};
            warn_decay(report, f, "input0");
            warn_decay(report, g, "input1");
            if (c.tol && e > *c.tol) {
                report["tolerance"] = *c.tol;
                throw detail::report_failure{report, "bridge error above tolerance"};
            }
        } else if (hp->parsed()) {
            need(2);
            auto p = hbar_smoothness_probe(grid2(0), grid2(1), c.hbar, delta);
            report = {{"hbar0", c.hbar},
                      {"delta", delta},
                      {"ratio", p.ratio},
                      {"residual_coarse", p.residual_coarse},
                      {"residual_fine", p.residual_fine},
                      {"derivative", io::write_grid2d(p.derivative)}};
        } else if (gb->parsed()) {
            auto [A, phi] = io::read_form(detail::load(inputs[0], "input0"));
            detail::check_q(c, A.q());
            std::vector<std::size_t> order;
            for (double x : detail::parse_numbers(basis_order, "basis-order")) {
                if (x < 0 || x != static_cast<double>(static_cast<std::size_t>(x)))
                    throw input_error("basis-order", "indices must be non-negative integers");
                order.push_back(static_cast<std::size_t>(x));
            }
            report = io::write_triplet(gns_build(phi, A, order));
        } else if (gc->parsed()) {
            auto [A, phi] = io::read_form(detail::load(inputs[0], "input0"));
            detail::check_q(c, A.q());
            double tol = c.tol.value_or(1e-10);
            auto pos = is_positive(phi, A, tol);
            report = {{"positive", pos.positive}, {"min_eigenvalue", pos.min_eigenvalue}};
            if (!pos.positive)
                report["witness"] = io::write_vector(pos.witness);
            auto coords = [&](const std::string &s, const std::string &field) {
                auto v = io::read_vector(detail::load(s, field), field);
                if (static_cast<std::size_t>(v.size()) != A.dim())
                    throw input_error(field, "expected " + std::to_string(A.dim()) + " coordinates");
                return v;
            };
            bool failed = !pos.positive;
            if (!f_path.empty()) {
                double r = schwarz_check(phi, coords(f_path, "f"), A);
                report["schwarz_residual"] = r;
                failed = failed || r > tol;
            }
            if (!action.empty()) {
                auto phif = state_action(phi, coords(action, "action"), A);
                report["state_action"] = io::write_form(A, phif);
            }
            if (failed)
                throw detail::report_failure{report, "form check failed"};
        } else if (su->parsed()) {
            report = suite::run(c.seed);
            if (!report["all_pass"].get<bool>())
                code = 1;
        }
    } catch (const detail::report_failure &f) {
        report = f.report;
        report["pass"] = false;
        err << "tolerance failure: " << f.message << "\n";
        code = 1;
    } catch (const input_error &e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (const tolerance_error &e) {
        report = {{"pass", false}, {"error", e.what()}, {"residual", e.residual()}};
        err << "tolerance failure: " << e.what() << "\n";
        code = 1;
    }

    std::string text = report.dump(2) + "\n";
    if (c.out_path.empty()) {
        out << text;
    } else {
        std::ofstream f(c.out_path, std::ios::binary);
        if (!f) {
            err << "input error: out: cannot write '" << c.out_path << "'\n";
            return 2;
        }
        f << text;
    }
    return code;
}

} // namespace nctorus::cli
