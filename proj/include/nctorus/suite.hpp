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
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "nctorus/io.hpp"
#include "nctorus/nctorus.hpp"
#include "nctorus/random.hpp"

namespace nctorus::suite {

using json = io::json;

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    double residual = 0.0; ///< worst normalized residual; pass needs <= 1
    json details = json::object();
};

namespace detail {

/// Accumulates named checks. Each check records its measurement and bound
/// and contributes measured / bound to the criterion residual.
class Checks {
public:
    void le(const std::string &name, double measured, double bound) {
        bool ok = std::isfinite(measured) && measured <= bound;
        details_[name] = {{"measured", measured}, {"bound", bound}, {"pass", ok}};
        pass_ = pass_ && ok;
        if (bound > 0.0)
            worst_ = std::max(worst_, std::isfinite(measured) ? measured / bound : INFINITY);
        else if (!ok)
            worst_ = INFINITY;
    }

    void in_range(const std::string &name, double measured, double lo, double hi) {
        bool ok = measured >= lo && measured <= hi;
        details_[name] = {{"measured", measured}, {"range", json::array({lo, hi})}, {"pass", ok}};
        pass_ = pass_ && ok;
        if (!ok)
            worst_ = INFINITY;
    }

    void holds(const std::string &name, bool ok) {
        details_[name] = {{"pass", ok}};
        pass_ = pass_ && ok;
        if (!ok)
            worst_ = INFINITY;
    }

    void note(const std::string &name, json value) { details_[name] = std::move(value); }

    CriterionResult finish(int id, std::string name) {
        return {id, std::move(name), pass_, worst_, std::move(details_)};
    }

private:
    bool pass_ = true;
    double worst_ = 0.0;
    json details_ = json::object();
};

inline double max_abs(const Eigen::MatrixXcd &m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline GridFunction1D gaussian1d(double center, double width, double kick, double L = 16.0,
                                 std::size_t n = 512) {
    return GridFunction1D::sample(L, n, [=](double u) {
        double x = (u - center) / width;
        return std::exp(-0.5 * x * x) * std::polar(1.0, kick * u);
    });
}

inline GridFunction2D gaussian2d(double t0, double s0, double width, complex amp = 1.0,
                                 double L = 8.0, std::size_t n = 64) {
    return GridFunction2D::sample(L, L, n, n, [=](double t, double s) {
        double r2 = ((t - t0) * (t - t0) + (s - s0) * (s - s0)) / (width * width);
        return amp * std::exp(-0.5 * r2);
    });
}

/// max |a - b| / max |b| on the grid points at least `margin` samples from
/// either end.
inline double interior_rel(const GridFunction1D &a, const GridFunction1D &b, std::size_t margin) {
    double num = 0.0, den = 0.0;
    for (std::size_t j = margin; j + margin < a.n(); ++j) {
        num = std::max(num, std::abs(a[j] - b[j]));
        den = std::max(den, std::abs(b[j]));
    }
    return den > 0.0 ? num / den : num;
}

/// Plain linear convolution by zero-padded 2D FFT, centred like the grid
/// convolutions: out(i, p) = sum a(i - j + n_t/2, p - r + n_s/2) b(j, r) dt ds.
inline GridFunction2D plain_convolution(const GridFunction2D &a, const GridFunction2D &b) {
    const std::size_t nt = a.n_t(), ns = a.n_s(), Nt = 2 * nt, Ns = 2 * ns;
    std::vector<complex> pa(Nt * Ns), pb(Nt * Ns);
    for (std::size_t i = 0; i < nt; ++i)
        for (std::size_t p = 0; p < ns; ++p) {
            pa[i * Ns + p] = a(i, p);
            pb[i * Ns + p] = b(i, p);
        }
    auto fa = fft2(pa, static_cast<int>(Nt), static_cast<int>(Ns));
    auto fb = fft2(pb, static_cast<int>(Nt), static_cast<int>(Ns));
    for (std::size_t k = 0; k < fa.size(); ++k)
        fa[k] *= fb[k];
    auto y = ifft2(fa, static_cast<int>(Nt), static_cast<int>(Ns));
    GridFunction2D out = a.zeros_like();
    for (std::size_t i = 0; i < nt; ++i)
        for (std::size_t p = 0; p < ns; ++p)
            out(i, p) = y[(i + nt / 2) * Ns + (p + ns / 2)] * a.dt() * a.ds();
    return out;
}

} // namespace detail

inline CriterionResult criterion_q_relation(std::uint64_t) {
    detail::Checks c;
    const auto q = PhaseQ::rational(1, 4);
    auto U = TorusElement::monomial(1, 0, q);
    auto V = TorusElement::monomial(0, 1, q);
    auto uv = q_mul(U, V), vu = q_mul(V, U);
    double res = max_abs_diff(uv, q.value() * vu);
    c.le("uv_minus_q_vu", res, 1e-14);
    c.le("uv_coefficient", std::abs(uv(1, 1) - 1.0), 1e-14);
    c.le("vu_coefficient", std::abs(vu(1, 1) - complex(0.0, -1.0)), 1e-14);
    return c.finish(1, "q-relation UV = qVU");
}

inline CriterionResult criterion_algebra_laws(std::uint64_t seed) {
    detail::Checks c;
    Rng rng(seed ^ 0x0201);
    double assoc = 0.0, invol = 0.0, anti = 0.0, trace_prop = 0.0;
    for (int i = 0; i < 200; ++i) {
        PhaseQ q = rng.phase(i % 2 == 0);
        TorusElement f{rng.lattice(4), q}, g{rng.lattice(4), q}, h{rng.lattice(4), q};
        assoc = std::max(assoc, max_abs_diff(q_mul(q_mul(f, g), h), q_mul(f, q_mul(g, h))));
        invol = std::max(invol, max_abs_diff(adjoint(adjoint(f)), f));
        anti = std::max(anti, max_abs_diff(adjoint(q_mul(f, g)), q_mul(adjoint(g), adjoint(f))));
        trace_prop = std::max(trace_prop, std::abs(trace(q_mul(f, g)) - trace(q_mul(g, f))));
    }
    c.le("associativity", assoc, 1e-12);
    c.le("involution", invol, 1e-12);
    c.le("anti_homomorphism", anti, 1e-12);
    c.le("trace_property", trace_prop, 1e-12);
    return c.finish(2, "algebra laws");
}

inline CriterionResult criterion_derivations(std::uint64_t seed) {
    detail::Checks c;
    Rng rng(seed ^ 0x0301);
    const std::vector<PhaseQ> qs = {PhaseQ::rational(1, 4), PhaseQ::rational(1, 3),
                                    PhaseQ::irrational(1.0)};
    bool accept_basic = true;
    double inner_worst = 0.0;
    double reject_gap = 0.0;
    bool reject_all = true, reject_location = true;
    for (const auto &q : qs) {
        accept_basic = accept_basic && check_derivation_relation(DerivationSpec::d_u(q)).ok &&
                       check_derivation_relation(DerivationSpec::d_v(q)).ok;
        DerivationSpec bad{CoeffLattice2::delta(0, 1), {}, q};
        auto rep = check_derivation_relation(bad);
        reject_all = reject_all && !rep.ok;
        reject_location = reject_location && rep.k == 0 && rep.l == 2;
        reject_gap = std::max(reject_gap, std::abs(rep.residual - std::abs(1.0 - q.value())));
    }
    for (int i = 0; i < 50; ++i) {
        PhaseQ q = rng.phase(i % 2 == 0);
        TorusElement a{rng.lattice(3), q};
        auto rep = check_derivation_relation(DerivationSpec::inner(a));
        inner_worst = std::max(inner_worst, rep.residual);
    }
    c.holds("accepts_D_U_and_D_V", accept_basic);
    c.le("inner_derivation_residual_max", inner_worst, 1e-10);
    c.holds("rejects_D(U)=V", reject_all);
    c.holds("rejection_at_(0,2)", reject_location);
    c.le("rejection_residual_minus_|1-q|", reject_gap, 1e-14);
    return c.finish(3, "derivation classification");
}

inline CriterionResult criterion_matrix_realization(std::uint64_t seed) {
    detail::Checks c;
    Rng rng(seed ^ 0x0401);
    double rel = 0.0, hom = 0.0, star = 0.0, center = 0.0;
    auto samples = circle_samples();
    for (std::int64_t n : {1, 2, 3, 4, 5, 7}) {
        PhaseQ q = PhaseQ::rational(1, n);
        auto [U0, V0] = clock_shift(q);
        auto I = MatrixN::Identity(n, n);
        rel = std::max(rel, op_norm(U0 * V0 - q.value() * V0 * U0));
        rel = std::max(rel, op_norm(unitary_power(U0, n) - I));
        rel = std::max(rel, op_norm(unitary_power(V0, n) - I));
        TorusElement f{rng.lattice(2), q}, g{rng.lattice(2), q};
        auto fg = q_mul(f, g);
        auto fs = adjoint(f);
        CoeffLattice2 cz(2 * static_cast<int>(n), 2 * static_cast<int>(n));
        for (int k = -2; k <= 2; ++k)
            for (int l = -2; l <= 2; ++l)
                cz.ref(k * static_cast<int>(n), l * static_cast<int>(n)) = rng.unit_disk_complex();
        TorusElement z{cz, q};
        for (complex u : samples) {
            for (complex v : samples) {
                MatrixN ef = eval_section(f, u, v);
                hom = std::max(hom, op_norm(eval_section(fg, u, v) - ef * eval_section(g, u, v)));
                star = std::max(star, op_norm(eval_section(fs, u, v) - ef.adjoint()));
                MatrixN ez = eval_section(z, u, v);
                complex s = ez(0, 0);
                center = std::max(center, op_norm(ez - s * MatrixN::Identity(n, n)));
            }
        }
    }
    c.le("clock_shift_relations", rel, 1e-13);
    c.le("multiplicative", hom, 1e-10);
    c.le("star_preserving", star, 1e-10);
    c.le("center_scalar", center, 1e-10);
    return c.finish(4, "matrix realization");
}

inline CriterionResult criterion_circle(std::uint64_t) {
    detail::Checks c;
    auto samples = circle_samples();
    struct Case {
        int n, a, b, ap, bp;
    };
    for (auto cs : {Case{2, 1, 1, 1, 0}, Case{3, 1, 2, 1, 0}, Case{5, 2, 3, -1, 1}}) {
        CircleSpec spec(cs.a, cs.b, cs.ap, cs.bp, PhaseQ::rational(1, cs.n));
        c.le("relations_N" + std::to_string(cs.n), circle_check_relations(spec, samples), 1e-12);
    }
    // N = 1: U = z^a and V = z^b are commuting scalars.
    CircleSpec one(2, 3, -1, 1, PhaseQ::rational(0, 1));
    double scalar_gap = 0.0, comm = 0.0;
    std::vector<CircleTerm> terms = {{0, 0, 0, 1.0}, {1, 0, 0, {0.5, -0.25}}, {-2, 0, 0, 0.75}};
    for (complex z : samples) {
        auto g = circle_generators(one, z);
        comm = std::max(comm, std::abs(g.u_gen(0, 0) * g.v_gen(0, 0) - g.v_gen(0, 0) * g.u_gen(0, 0)));
        complex expected = 1.0 + complex(0.5, -0.25) * z + 0.75 / (z * z);
        scalar_gap = std::max(scalar_gap, std::abs(circle_eval(terms, one, z)(0, 0) - expected));
    }
    c.le("N1_relations", circle_check_relations(one, samples), 1e-12);
    c.le("N1_commutator", comm, 0.0);
    c.le("N1_scalar_function", scalar_gap, 1e-12);
    return c.finish(5, "noncommutative circle");
}

inline CriterionResult criterion_weyl(std::uint64_t) {
    detail::Checks c;
    const std::vector<GridFunction1D> probes = {detail::gaussian1d(0.0, 1.0, 0.0),
                                                detail::gaussian1d(1.5, 0.8, 0.7),
                                                detail::gaussian1d(-2.0, 1.3, -1.1)};
    double comm = 0.0, weyl = 0.0, chain = 0.0, groupP = 0.0, groupQ = 0.0, unitary = 0.0;
    for (double hbar : {0.3, 1.0}) {
        for (const auto &f : probes) {
            auto lhs = apply_Q(apply_P(f, hbar));
            auto rhs = apply_P(apply_Q(f), hbar);
            GridFunction1D diff = lhs;
            GridFunction1D ihf = f;
            for (std::size_t j = 0; j < f.n(); ++j) {
                diff[j] = lhs[j] - rhs[j];
                ihf[j] = complex(0.0, hbar) * f[j];
            }
            comm = std::max(comm, detail::interior_rel(diff, ihf, f.n() / 8));
            for (double t : {0.7, -1.3}) {
                for (double s : {0.5, -0.9}) {
                    auto a = weyl_Q(t, weyl_P(s, f, hbar));
                    auto b = weyl_P(s, weyl_Q(t, f), hbar);
                    GridFunction1D expect = b;
                    for (auto &v : expect.values())
                        v *= std::polar(1.0, -t * s * hbar);
                    weyl = std::max(weyl, detail::interior_rel(a, expect, 0));
                    GridFunction1D direct = f;
                    auto shifted = weyl_P(s, f, hbar);
                    for (std::size_t j = 0; j < f.n(); ++j)
                        direct[j] = std::polar(1.0, s * t * hbar) * std::polar(1.0, t * f.x(j)) *
                                    shifted[j];
                    chain = std::max(chain, detail::interior_rel(b, direct, 0));
                    groupP = std::max(groupP, detail::interior_rel(weyl_P(s, weyl_P(t, f, hbar), hbar),
                                                                   weyl_P(s + t, f, hbar), 0));
                    groupQ = std::max(groupQ, detail::interior_rel(weyl_Q(s, weyl_Q(t, f)),
                                                                   weyl_Q(s + t, f), 0));
                    unitary = std::max(unitary, std::abs(l2_norm(weyl_P(s, f, hbar)) - l2_norm(f)) /
                                                    l2_norm(f));
                }
            }
        }
    }
    c.le("commutator_[Q,P]=i_hbar", comm, 1e-8);
    c.le("weyl_relation", weyl, 1e-8);
    c.le("composite_action", chain, 1e-8);
    c.le("group_law_P", groupP, 1e-9);
    c.le("group_law_Q", groupQ, 1e-9);
    c.le("unitarity_P", unitary, 1e-10);
    return c.finish(6, "Weyl relations on the grid");
}

inline CriterionResult criterion_lattice_rep(std::uint64_t seed) {
    detail::Checks c;
    Rng rng(seed ^ 0x0701);
    const double sigma = 1.0;
    double hom = 0.0;
    for (double hbar : {0.5, 0.9}) {
        PhaseQ qe = calibrate_q(sigma, hbar);
        auto f = detail::gaussian1d(0.3, 1.0, 0.2);
        for (int trial = 0; trial < 3; ++trial) {
            TorusElement a{rng.lattice(1), qe}, b{rng.lattice(1), qe};
            auto lhs = rep_lattice_measure(q_mul(a, b).coeffs, sigma, hbar, f);
            auto rhs = rep_lattice_measure(a.coeffs, sigma, hbar,
                                           rep_lattice_measure(b.coeffs, sigma, hbar, f));
            hom = std::max(hom, relative_l2(lhs, rhs));
        }
    }
    double weyl_oracle = 0.0, literal = 0.0;
    json sweep = json::array();
    for (int i = 1; i <= 10; ++i) {
        double hbar = 0.1 * i;
        complex q = calibrate_q(sigma, hbar).value();
        double d_weyl = std::abs(q - std::polar(1.0, -sigma * sigma * hbar));
        double d_lit = std::abs(q - std::polar(1.0, sigma * sigma * hbar));
        weyl_oracle = std::max(weyl_oracle, d_weyl);
        literal = std::max(literal, d_lit);
        sweep.push_back({{"hbar", hbar}, {"arg_q", std::arg(q)}});
    }
    complex qpi = calibrate_q(1.0, std::numbers::pi).value();
    c.le("homomorphism", hom, 1e-7);
    c.le("calibrate_vs_exp(-i sigma^2 hbar)", weyl_oracle, 1e-8);
    c.le("calibrate_hbar_pi_is_-1", std::abs(qpi + 1.0), 1e-8);
    c.le("calibrate_hbar_0_is_1", std::abs(calibrate_q(sigma, 0.0).value() - 1.0), 1e-15);
    c.note("deviation_from_exp(+i sigma^2 hbar)", literal);
    c.note("sweep", sweep);
    return c.finish(7, "lattice-measure representation");
}

inline CriterionResult criterion_twisted(std::uint64_t) {
    detail::Checks c;
    auto a = detail::gaussian2d(0.3, -0.2, 0.8);
    auto b = detail::gaussian2d(-0.4, 0.1, 0.7, {0.6, 0.3});
    auto e = detail::gaussian2d(0.2, 0.5, 0.9, {0.2, -0.9});
    auto plain = detail::plain_convolution(a, b);
    c.le("hbar0_twisted_vs_plain", relative_l2(twisted_conv(a, b, 0.0), plain), 1e-10);
    c.le("hbar0_other_vs_plain", relative_l2(other_twisted_conv(a, b, 0.0), plain), 1e-10);
    const double hbar = 0.5;
    c.le("associativity",
         relative_l2(twisted_conv(twisted_conv(a, b, hbar), e, hbar),
                     twisted_conv(a, twisted_conv(b, e, hbar), hbar)),
         1e-6);
    auto fwd = [&](const GridFunction2D &x) { return gauge_iso(x, hbar, GaugeDirection::forward); };
    c.le("gauge_transport",
         relative_l2(gauge_iso(other_twisted_conv(fwd(a), fwd(b), hbar), hbar, GaugeDirection::inverse),
                     twisted_conv(a, b, hbar)),
         1e-6);
    c.le("group_conv_vs_other",
         relative_l2(heisenberg_group_conv(a, b, 0.3), other_twisted_conv(a, b, 0.3)), 1e-10);
    double rescale = 0.0;
    for (double h : {0.3, 0.7, 1.5})
        rescale = std::max(rescale, relative_l2(hbar_rescaled_conv(a, b, h), other_twisted_conv(a, b, h)));
    c.le("rescaling_isomorphism", rescale, 1e-6);
    return c.finish(8, "twisted convolutions");
}

inline CriterionResult criterion_moyal(std::uint64_t seed) {
    detail::Checks c;
    Rng rng(seed ^ 0x0901);
    auto x1 = PolySymbol::variable(2, 1), x2 = PolySymbol::variable(2, 2);
    const int K = 4;
    HbarSeries comm = moyal_star(x1, x2, K) - moyal_star(x2, x1, K);
    bool exact = comm[0].is_zero() && comm[1] == PolySymbol::constant(2, GaussRat::i());
    for (int k = 2; k <= K; ++k)
        exact = exact && comm[static_cast<std::size_t>(k)].is_zero();
    c.holds("x1*x2-x2*x1=i_hbar", exact);

    bool assoc = true;
    for (int trial = 0; trial < 4; ++trial) {
        auto f = rng.poly(2, 4), g = rng.poly(2, 4), h = rng.poly(2, 4);
        auto lhs = moyal_star(moyal_star(f, g, K), as_series(h, K), K);
        auto rhs = moyal_star(as_series(f, K), moyal_star(g, h, K), K);
        assoc = assoc && lhs == rhs;
    }
    c.holds("formal_associativity_order_4", assoc);

    bool poisson = true;
    for (int trial = 0; trial < 10; ++trial) {
        auto f = rng.poly(2, 4), g = rng.poly(2, 4);
        auto d = moyal_star(f, g, 1) - moyal_star(g, f, 1);
        poisson = poisson && d[1] == GaussRat(0, -1) * poisson_bracket(f, g);
    }
    c.holds("hbar1_commutator=-i_poisson", poisson);

    auto f = detail::gaussian2d(0.3, -0.2, 0.8);
    auto g = detail::gaussian2d(-0.4, 0.1, 0.7, {0.6, 0.3});
    json errs = json::array();
    double prev = INFINITY;
    bool monotone = true;
    double at8 = 0.0;
    for (int k = 0; k <= 8; k += 2) {
        double e = fourier_bridge_error(f, g, 0.05, k);
        errs.push_back({{"K", k}, {"error", e}});
        monotone = monotone && e <= prev;
        prev = e;
        at8 = e;
    }
    c.le("bridge_hbar0", fourier_bridge_error(f, g, 0.0, 0), 1e-8);
    c.le("bridge_hbar0.05_K8", at8, 1e-3);
    c.holds("bridge_monotone_in_K", monotone);
    c.note("bridge_errors", errs);
    return c.finish(9, "Moyal expansions");
}

inline CriterionResult criterion_inner_generator(std::uint64_t) {
    detail::Checks c;
    const double hbar = 0.7;
    auto b0 = GridFunction2D::sample(8.0, 8.0, 64, 64, [](double t, double s) {
        double r2 = (t - 0.5) * (t - 0.5) + (s - 0.3) * (s - 0.3);
        return complex(std::exp(-r2 / 1.28), 0.3 * std::exp(-r2 / 0.9));
    });
    DerivationData d{b0.zeros_like(), b0.zeros_like(), hbar};
    for (std::size_t i = 0; i < b0.n_t(); ++i)
        for (std::size_t p = 0; p < b0.n_s(); ++p) {
            d.a_Q(i, p) = b0(i, p) * b0.s(p) * hbar;
            d.a_P(i, p) = -b0(i, p) * b0.t(i) * hbar;
        }
    auto sol = solve_inner_generator(d);
    const double peak = max_abs(b0.values());
    double away = 0.0, near = 0.0;
    const auto it0 = static_cast<std::ptrdiff_t>(b0.n_t() / 2);
    const auto ip0 = static_cast<std::ptrdiff_t>(b0.n_s() / 2);
    for (std::size_t i = 0; i < b0.n_t(); ++i)
        for (std::size_t p = 0; p < b0.n_s(); ++p) {
            auto di = std::abs(static_cast<std::ptrdiff_t>(i) - it0);
            auto dp = std::abs(static_cast<std::ptrdiff_t>(p) - ip0);
            double e = std::abs(sol.b(i, p) - b0(i, p)) / peak;
            if (di >= 2 && dp >= 2)
                away = std::max(away, e);
            else if (di < 2 && dp < 2 && (di | dp) != 0)
                near = std::max(near, e);
        }
    c.le("round_trip_away_from_axes", away, 1e-8);
    c.note("near_origin_poincare_error", near);
    c.note("origin_error", std::abs(sol.b(static_cast<std::size_t>(it0), static_cast<std::size_t>(ip0)) -
                                    b0(static_cast<std::size_t>(it0), static_cast<std::size_t>(ip0))) /
                               peak);

    DerivationData zero{b0.zeros_like(), b0.zeros_like(), hbar};
    c.le("zero_in_zero_out", max_abs(solve_inner_generator(zero).b.values()), 0.0);

    DerivationData bad{b0.zeros_like(), b0.zeros_like(), hbar};
    for (std::size_t i = 0; i < b0.n_t(); ++i)
        for (std::size_t p = 0; p < b0.n_s(); ++p) {
            bad.a_Q(i, p) = b0(i, p) * b0.s(p) * hbar;
            bad.a_P(i, p) = b0(i, p) * b0.t(i) * hbar;
        }
    bool rejected = false;
    try {
        solve_inner_generator(bad);
    } catch (const tolerance_error &) {
        rejected = true;
    }
    c.holds("compatibility_rejection", rejected);
    return c.finish(10, "inner derivations of the Heisenberg plane");
}

inline CriterionResult criterion_gns(std::uint64_t seed) {
    detail::Checks c;
    Rng rng(seed ^ 0x0b01);
    double recon = 0.0, schwarz = 0.0, unitary = 0.0, herm = 0.0;
    bool dims_ok = true, orbit_ok = true, injective_ok = true;
    for (std::int64_t n = 1; n <= 5; ++n) {
        auto A = FiniteAlgebra::torus_quotient(PhaseQ::rational(1, n));
        Vector w(n);
        for (Eigen::Index i = 0; i < n; ++i)
            w[i] = rng.unit_disk_complex();
        w.normalize();
        auto tr = PositiveForm::trace(A);
        auto vs = PositiveForm::vector_state(A, w);
        for (const auto &[phi, expected] :
             {std::pair{tr, static_cast<std::size_t>(n * n)}, std::pair{vs, static_cast<std::size_t>(n)}}) {
            auto T = gns_build(phi, A);
            recon = std::max(recon, T.reconstruction_residual);
            herm = std::max(herm, T.star_residual);
            dims_ok = dims_ok && T.quotient_dim == expected;
            orbit_ok = orbit_ok && orbit_rank(T) == static_cast<Eigen::Index>(T.quotient_dim);
            std::vector<std::size_t> rev(A.dim());
            for (std::size_t i = 0; i < A.dim(); ++i)
                rev[i] = A.dim() - 1 - i;
            unitary = std::max(unitary, unitary_equivalence_residual(T, gns_build(phi, A, rev)));
            for (int trial = 0; trial < 5; ++trial) {
                Vector f(static_cast<Eigen::Index>(A.dim()));
                for (Eigen::Index i = 0; i < f.size(); ++i)
                    f[i] = rng.unit_disk_complex();
                schwarz = std::max(schwarz, schwarz_check(phi, f, A));
            }
        }
        auto rep = direct_sum_injectivity({vs}, A);
        injective_ok = injective_ok && (rep.injective == (n == 1));
        auto rep_tr = direct_sum_injectivity({tr}, A);
        injective_ok = injective_ok && rep_tr.injective;
    }
    // Degenerate forms: mixture of two orthogonal vector states, and zero.
    auto A3 = FiniteAlgebra::torus_quotient(PhaseQ::rational(1, 3));
    Vector e0 = Vector::Zero(3), e1 = Vector::Zero(3);
    e0[0] = 1.0;
    e1[1] = 1.0;
    PositiveForm mix{0.5 * PositiveForm::vector_state(A3, e0).values +
                     0.5 * PositiveForm::vector_state(A3, e1).values};
    dims_ok = dims_ok && gns_build(mix, A3).quotient_dim == 6;
    PositiveForm zero{Vector::Zero(9)};
    dims_ok = dims_ok && gns_build(zero, A3).quotient_dim == 0;
    PositiveForm neg{-A3.unit()};
    auto pr = is_positive(neg, A3);
    bool witness_ok = !pr.positive && pr.witness.size() == 9 &&
                      neg(A3.mul(A3.star(pr.witness), pr.witness)).real() < 0.0;

    c.le("reconstruction", recon, 1e-10);
    c.le("hermitian_representation", herm, 1e-10);
    c.holds("quotient_dimensions", dims_ok);
    c.holds("omega_cyclic", orbit_ok);
    c.holds("negative_form_witness", witness_ok);
    c.holds("direct_sum_injectivity", injective_ok);
    c.le("schwarz", schwarz, 1e-10);
    c.le("unique_up_to_unitary", unitary, 1e-8);
    return c.finish(11, "GNS construction");
}

inline CriterionResult criterion_hbar_probe(std::uint64_t) {
    detail::Checks c;
    auto a = detail::gaussian2d(0.3, -0.2, 0.8);
    auto b = detail::gaussian2d(-0.4, 0.1, 0.7, {0.6, 0.3});
    for (double h0 : {0.1, 0.5, 1.0}) {
        auto p = hbar_smoothness_probe(a, b, h0, 1e-2);
        char name[32];
        std::snprintf(name, sizeof name, "ratio_hbar0=%.1f", h0);
        c.in_range(name, p.ratio, 3.5, 4.5);
    }
    return c.finish(12, "hbar-smoothness probe");
}

using CriterionFn = CriterionResult (*)(std::uint64_t);

inline const std::vector<CriterionFn> &criteria() {
    static const std::vector<CriterionFn> all = {
        criterion_q_relation,   criterion_algebra_laws,      criterion_derivations,
        criterion_matrix_realization, criterion_circle,      criterion_weyl,
        criterion_lattice_rep,  criterion_twisted,           criterion_moyal,
        criterion_inner_generator, criterion_gns,            criterion_hbar_probe};
    return all;
}

inline json to_json(const CriterionResult &r) {
    return {{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"residual", r.residual},
            {"details", r.details}};
}

/// Runs every criterion in order; a criterion that throws is recorded as a
/// failure with the message.
inline json run(std::uint64_t seed) {
    json out = {{"seed", seed}, {"criteria", json::array()}};
    bool all = true;
    int id = 0;
    for (auto fn : criteria()) {
        ++id;
        CriterionResult r;
        try {
            r = fn(seed);
        } catch (const std::exception &e) {
            r.id = id;
            r.name = "criterion " + std::to_string(id);
            r.pass = false;
            r.residual = INFINITY;
            r.details = {{"error", e.what()}};
        }
        all = all && r.pass;
        out["criteria"].push_back(to_json(r));
    }
    out["all_pass"] = all;
    return out;
}

} // namespace nctorus::suite
