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

#include <functional>

#include <catch2/catch_amalgamated.hpp>

#include "nctorus/random.hpp"
#include "support.hpp"

using namespace nctorus;
using testing::gauss1;

namespace {

double interior_err(const GridFunction1D &a, const std::function<complex(double)> &exact,
                    std::size_t margin) {
    double num = 0.0, den = 0.0;
    for (std::size_t j = margin; j + margin < a.n(); ++j) {
        num = std::max(num, std::abs(a[j] - exact(a.x(j))));
        den = std::max(den, std::abs(exact(a.x(j))));
    }
    return num / den;
}

complex g_exact(double u, double c, double w, double kick) {
    double x = (u - c) / w;
    return std::exp(-0.5 * x * x) * std::polar(1.0, kick * u);
}

} // namespace

TEST_CASE("grid validation") {
    CHECK_THROWS_AS(GridFunction1D(1.0, 12, std::vector<complex>(12)), input_error);
    CHECK_THROWS_AS(GridFunction1D(1.0, 4, std::vector<complex>(4)), input_error);
    CHECK_THROWS_AS(GridFunction1D(-1.0, 8, std::vector<complex>(8)), input_error);
    CHECK_THROWS_AS(GridFunction1D(1.0, 8, std::vector<complex>(7)), input_error);
    std::vector<complex> v(8);
    v[3] = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(GridFunction1D(1.0, 8, v), input_error);
    auto f = gauss1(0.0, 1.0);
    CHECK(f.x(0) == -16.0);
    CHECK(f.dx() == 1.0 / 16.0);
    CHECK(boundary_decay(f).ok);
    CHECK(!boundary_decay(gauss1(0.0, 6.0)).ok);
}

TEST_CASE("Q and P on Gaussians") {
    auto f = gauss1(0.0, 1.0);
    auto qf = apply_Q(f);
    for (std::size_t j = 0; j < f.n(); ++j)
        CHECK(qf[j] == f.x(j) * f[j]);
    for (double hbar : {0.3, 1.0}) {
        for (auto [c, w, kick] : {std::tuple{0.0, 1.0, 0.0}, std::tuple{1.5, 0.8, 0.7}}) {
            auto g = gauss1(c, w, kick);
            // (hbar/i) d/du of the analytic Gaussian.
            auto exact = [&](double u) {
                return hbar / complex(0, 1) * (-(u - c) / (w * w) + complex(0, kick)) * g_exact(u, c, w, kick);
            };
            CHECK(interior_err(apply_P(g, hbar), exact, 0) <= 1e-10);
        }
    }
    auto zero = apply_P(f, 0.0);
    CHECK(max_abs(zero.values()) == 0.0);
}

TEST_CASE("canonical commutation relation") {
    for (double hbar : {0.2, 1.0, 2.5}) {
        auto f = gauss1(-1.0, 1.2, 0.4);
        auto lhs = apply_Q(apply_P(f, hbar)), rhs = apply_P(apply_Q(f), hbar);
        double num = 0.0, den = 0.0;
        for (std::size_t j = 64; j + 64 < f.n(); ++j) {
            num = std::max(num, std::abs(lhs[j] - rhs[j] - complex(0, hbar) * f[j]));
            den = std::max(den, std::abs(hbar * f[j]));
        }
        CHECK(num / den <= 1e-8);
    }
}

TEST_CASE("Weyl operators") {
    const double hbar = 0.7;
    auto f = gauss1(0.5, 1.0, -0.3);
    CHECK(relative_l2(weyl_P(0.0, f, hbar), f) <= 1e-15);
    CHECK(relative_l2(weyl_Q(0.0, f), f) == 0.0);
    for (double s : {0.4, -1.7}) {
        auto shifted = weyl_P(s, f, hbar);
        CHECK(interior_err(shifted, [&](double u) { return g_exact(u + s * hbar, 0.5, 1.0, -0.3); }, 0) <=
              1e-10);
        CHECK(std::abs(l2_norm(shifted) - l2_norm(f)) <= 1e-10 * l2_norm(f));
    }
    for (double t : {0.9, -2.0}) {
        auto m = weyl_Q(t, f);
        CHECK(l2_norm(m) == Catch::Approx(l2_norm(f)).epsilon(1e-15));
        for (std::size_t j = 0; j < f.n(); ++j)
            CHECK(std::abs(m[j] - std::polar(1.0, t * f.x(j)) * f[j]) <= 1e-15);
    }
    for (double t : {0.7, -1.3})
        for (double s : {0.5, -0.9}) {
            auto a = weyl_Q(t, weyl_P(s, f, hbar));
            auto b = weyl_P(s, weyl_Q(t, f), hbar);
            GridFunction1D e = b;
            for (auto &v : e.values())
                v *= std::polar(1.0, -t * s * hbar);
            CHECK(relative_l2(a, e) <= 1e-8);
            // (e^{isP} e^{itQ} f)(u) = e^{its hbar} e^{itu} f(u + s hbar).
            CHECK(interior_err(b,
                               [&](double u) {
                                   return std::polar(1.0, t * s * hbar + t * u) *
                                          g_exact(u + s * hbar, 0.5, 1.0, -0.3);
                               },
                               0) <= 1e-8);
            CHECK(relative_l2(weyl_P(s, weyl_P(t, f, hbar), hbar), weyl_P(s + t, f, hbar)) <= 1e-9);
        }
}

TEST_CASE("generators by central differences") {
    const double hbar = 0.8, h = 1e-4;
    auto f = gauss1(0.2, 1.0, 0.5);
    auto dq = weyl_Q(h, f), dqm = weyl_Q(-h, f);
    auto dp = weyl_P(h, f, hbar), dpm = weyl_P(-h, f, hbar);
    auto iq = apply_Q(f), ip = apply_P(f, hbar);
    GridFunction1D fdq = f, fdp = f, eq = f, ep = f;
    for (std::size_t j = 0; j < f.n(); ++j) {
        fdq[j] = (dq[j] - dqm[j]) / (2 * h);
        fdp[j] = (dp[j] - dpm[j]) / (2 * h);
        eq[j] = complex(0, 1) * iq[j];
        ep[j] = complex(0, 1) * ip[j];
    }
    CHECK(relative_l2(fdq, eq) <= 1e-6);
    CHECK(relative_l2(fdp, ep) <= 1e-6);
}

TEST_CASE("lattice-measure representation") {
    auto f = gauss1(0.0, 1.0, 0.0);
    CHECK(relative_l2(rep_lattice_measure(CoeffLattice2::delta(0, 0), 1.0, 0.5, f), f) == 0.0);
    const double two_pi = 2.0 * std::numbers::pi;
    auto m = rep_lattice_measure(CoeffLattice2::delta(1, 0), two_pi, 0.5, f);
    for (std::size_t j = 0; j < f.n(); ++j)
        CHECK(std::abs(m[j] - std::polar(1.0, two_pi * f.x(j)) * f[j]) <= 1e-14);

    Rng rng(3);
    auto c = rng.lattice(2), d = rng.lattice(2);
    auto g = gauss1(1.0, 0.9, 0.3);
    complex al{0.3, -1.2};
    auto lin_c = rep_lattice_measure(c + al * d, 1.0, 0.6, f);
    auto sum = rep_lattice_measure(c, 1.0, 0.6, f);
    auto rd = rep_lattice_measure(d, 1.0, 0.6, f);
    for (std::size_t j = 0; j < f.n(); ++j)
        sum[j] += al * rd[j];
    CHECK(relative_l2(lin_c, sum) <= 1e-12);
    GridFunction1D fg = f;
    for (std::size_t j = 0; j < f.n(); ++j)
        fg[j] = f[j] + al * g[j];
    auto lin_f = rep_lattice_measure(c, 1.0, 0.6, fg);
    auto rf = rep_lattice_measure(c, 1.0, 0.6, f), rg = rep_lattice_measure(c, 1.0, 0.6, g);
    for (std::size_t j = 0; j < f.n(); ++j)
        rf[j] += al * rg[j];
    CHECK(relative_l2(lin_f, rf) <= 1e-12);
}

TEST_CASE("calibrated q follows the Weyl relation") {
    CHECK(std::abs(calibrate_q(1.0, 0.0).value() - 1.0) <= 1e-15);
    CHECK(std::abs(calibrate_q(1.0, std::numbers::pi).value() + 1.0) <= 1e-8);
    for (double sigma : {0.5, 1.0, 1.3})
        for (int i = 1; i <= 10; ++i) {
            double hbar = 0.1 * i;
            CHECK(std::abs(calibrate_q(sigma, hbar).value() - std::polar(1.0, -sigma * sigma * hbar)) <=
                  1e-8);
        }
    CHECK_THROWS_AS(calibrate_q(1.0, 0.5, GridFunction1D(16.0, 64, std::vector<complex>(64))),
                    input_error);
}

TEST_CASE("rep is multiplicative for the calibrated q") {
    Rng rng(4);
    const double sigma = 0.8, hbar = 0.6;
    auto qe = calibrate_q(sigma, hbar);
    auto f = gauss1(-0.4, 1.1, 0.1);
    for (int trial = 0; trial < 3; ++trial) {
        TorusElement a{rng.lattice(1), qe}, b{rng.lattice(1), qe};
        auto lhs = rep_lattice_measure(q_mul(a, b).coeffs, sigma, hbar, f);
        auto rhs = rep_lattice_measure(a.coeffs, sigma, hbar, rep_lattice_measure(b.coeffs, sigma, hbar, f));
        CHECK(relative_l2(lhs, rhs) <= 1e-7);
    }
    // The literal e^{+i sigma^2 hbar} does not give a homomorphism.
    auto wrong = PhaseQ::irrational(sigma * sigma * hbar);
    TorusElement U = TorusElement::monomial(1, 0, wrong), V = TorusElement::monomial(0, 1, wrong);
    auto lhs = rep_lattice_measure(q_mul(U, V).coeffs, sigma, hbar, f);
    auto rhs = rep_lattice_measure(U.coeffs, sigma, hbar, rep_lattice_measure(V.coeffs, sigma, hbar, f));
    auto lhs2 = rep_lattice_measure(q_mul(V, U).coeffs, sigma, hbar, f);
    auto rhs2 = rep_lattice_measure(V.coeffs, sigma, hbar, rep_lattice_measure(U.coeffs, sigma, hbar, f));
    CHECK(relative_l2(lhs, rhs) + relative_l2(lhs2, rhs2) > 1e-2);
}

namespace {

DerivationData forward_map(const GridFunction2D &b0, double hbar, double sign = -1.0) {
    DerivationData d{b0.zeros_like(), b0.zeros_like(), hbar};
    for (std::size_t i = 0; i < b0.n_t(); ++i)
        for (std::size_t p = 0; p < b0.n_s(); ++p) {
            d.a_Q(i, p) = b0(i, p) * b0.s(p) * hbar;
            d.a_P(i, p) = sign * b0(i, p) * b0.t(i) * hbar;
        }
    return d;
}

} // namespace

TEST_CASE("inner generator round trip") {
    for (double hbar : {0.4, -1.1}) {
        auto b0 = GridFunction2D::sample(8.0, 9.0, 64, 128, [](double t, double s) {
            return complex(std::exp(-0.5 * ((t + 0.7) * (t + 0.7) + 1.5 * s * s)),
                           0.5 * std::exp(-0.5 * ((t - 1.0) * (t - 1.0) + (s + 0.5) * (s + 0.5))));
        });
        auto sol = solve_inner_generator(forward_map(b0, hbar));
        CHECK(sol.compatibility_residual <= 1e-15);
        const double peak = max_abs(b0.values());
        double away = 0.0, near = 0.0;
        for (std::size_t i = 0; i < b0.n_t(); ++i)
            for (std::size_t p = 0; p < b0.n_s(); ++p) {
                long di = std::labs(static_cast<long>(i) - 32), dp = std::labs(static_cast<long>(p) - 64);
                double e = std::abs(sol.b(i, p) - b0(i, p)) / peak;
                if (di >= 2 && dp >= 2)
                    away = std::max(away, e);
                else
                    near = std::max(near, e);
            }
        CHECK(away <= 1e-8);
        CHECK(near <= 1e-9);
        CHECK(sol.overlap_residual <= 1e-6);
    }
}

TEST_CASE("inner generator errors") {
    auto b0 = testing::gauss2(0.3, -0.2, 1.0);
    auto z = DerivationData{b0.zeros_like(), b0.zeros_like(), 0.5};
    CHECK(max_abs(solve_inner_generator(z).b.values()) == 0.0);
    CHECK_THROWS_AS(solve_inner_generator(forward_map(b0, 0.5, +1.0)), tolerance_error);
    try {
        solve_inner_generator(forward_map(b0, 0.5, +1.0));
    } catch (const tolerance_error &e) {
        CHECK(e.residual() > 1e-2);
    }
    CHECK_THROWS_AS(solve_inner_generator(forward_map(b0, 0.0)), input_error);
    auto d = forward_map(b0, 0.5);
    d.a_P = testing::gauss2(0.0, 0.0, 1.0, 1.0, 4.0, 64);
    CHECK_THROWS_AS(solve_inner_generator(d), input_error);
}
