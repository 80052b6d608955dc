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

#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace nctorus;
using testing::brute_conv;
using testing::gauss2;
using testing::rel;

namespace {

GridFunction2D small(double t0, double s0, double w, complex amp = 1.0) {
    return gauss2(t0, s0, w, amp, 4.0, 16);
}

} // namespace

TEST_CASE("twisted_conv matches the direct sum of the displayed integral") {
    auto a = small(0.3, -0.2, 0.9, {1.0, 0.4}), b = small(-0.5, 0.4, 0.7, {0.2, -1.0});
    for (double hbar : {0.0, 0.4, 1.7}) {
        auto oracle = brute_conv(a, b, [&](double, double s, double u, double v) {
            return std::polar(1.0, (s * u - v * u) * hbar);
        });
        CHECK(rel(twisted_conv(a, b, hbar), oracle) <= 1e-13);
    }
}

TEST_CASE("other_twisted_conv matches the direct sum with the symplectic phase") {
    auto a = small(0.3, -0.2, 0.9, {1.0, 0.4}), b = small(-0.5, 0.4, 0.7, {0.2, -1.0});
    for (double hbar : {0.0, 0.4, 1.7}) {
        auto oracle = brute_conv(a, b, [&](double x1, double x2, double y1, double y2) {
            return std::polar(1.0, -0.5 * hbar * (x1 * y2 - y1 * x2));
        });
        CHECK(rel(other_twisted_conv(a, b, hbar), oracle) <= 1e-13);
        CHECK(rel(heisenberg_group_conv(a, b, hbar), oracle) <= 1e-13);
    }
}

TEST_CASE("hbar = 0 is the plain convolution") {
    auto a = gauss2(0.3, -0.2, 0.8), b = gauss2(-0.4, 0.1, 0.7, {0.6, 0.3});
    auto plain = brute_conv(small(0.3, -0.2, 0.8), small(-0.4, 0.1, 0.7, {0.6, 0.3}),
                            [](double, double, double, double) { return complex(1.0); });
    CHECK(rel(twisted_conv(small(0.3, -0.2, 0.8), small(-0.4, 0.1, 0.7, {0.6, 0.3}), 0.0), plain) <= 1e-13);
    CHECK(rel(twisted_conv(a, b, 0.0), other_twisted_conv(a, b, 0.0)) <= 1e-12);
    CHECK(rel(twisted_conv(a, b, 0.0), heisenberg_group_conv(a, b, 0.0)) <= 1e-12);
}

TEST_CASE("narrow bump is an approximate unit on both sides") {
    auto a = gauss2(0.2, -0.3, 1.0, {1.0, 0.5}, 8.0, 128);
    const double w = 0.12;
    auto bump = gauss2(0.0, 0.0, w, 1.0 / (2.0 * std::numbers::pi * w * w), 8.0, 128);
    for (double hbar : {0.0, 0.8}) {
        CHECK(rel(twisted_conv(a, bump, hbar), a) <= 0.05);
        CHECK(rel(other_twisted_conv(a, bump, hbar), a) <= 0.05);
        CHECK(rel(other_twisted_conv(bump, a, hbar), a) <= 0.05);
    }
    // The error shrinks like the bump width squared.
    auto wide = gauss2(0.0, 0.0, 0.4, 1.0 / (2.0 * std::numbers::pi * 0.16), 8.0, 128);
    const double w2 = 0.2;
    auto bump2 = gauss2(0.0, 0.0, w2, 1.0 / (2.0 * std::numbers::pi * w2 * w2), 8.0, 128);
    double e1 = rel(other_twisted_conv(a, wide, 0.8), a), e2 = rel(other_twisted_conv(a, bump2, 0.8), a);
    CHECK(e1 / e2 == Catch::Approx(4.0).epsilon(0.1));
}

TEST_CASE("bilinearity") {
    auto a = gauss2(0.3, -0.2, 0.8), b = gauss2(-0.4, 0.1, 0.7), c = gauss2(0.1, 0.5, 0.9);
    complex al{0.7, -0.2};
    GridFunction2D bc = b;
    bc += al * c;
    for (double hbar : {0.3, 1.2}) {
        GridFunction2D r1 = twisted_conv(a, b, hbar);
        r1 += al * twisted_conv(a, c, hbar);
        CHECK(rel(twisted_conv(a, bc, hbar), r1) <= 1e-13);
        GridFunction2D r2 = other_twisted_conv(a, b, hbar);
        r2 += al * other_twisted_conv(a, c, hbar);
        CHECK(rel(other_twisted_conv(a, bc, hbar), r2) <= 1e-13);
    }
}

TEST_CASE("associativity on Gaussians") {
    auto a = gauss2(0.3, -0.2, 0.8), b = gauss2(-0.4, 0.1, 0.7, {0.6, 0.3}),
         c = gauss2(0.2, 0.5, 0.9, {0.2, -0.9});
    for (double hbar : {0.5, 1.0}) {
        CHECK(rel(twisted_conv(twisted_conv(a, b, hbar), c, hbar),
                  twisted_conv(a, twisted_conv(b, c, hbar), hbar)) <= 1e-6);
        CHECK(rel(other_twisted_conv(other_twisted_conv(a, b, hbar), c, hbar),
                  other_twisted_conv(a, other_twisted_conv(b, c, hbar), hbar)) <= 1e-6);
    }
    // Noncommutative for hbar != 0.
    CHECK(rel(twisted_conv(a, b, 1.0), twisted_conv(b, a, 1.0)) > 1e-3);
}

TEST_CASE("gauge map") {
    auto a = gauss2(0.3, -0.2, 0.8, {1.0, 0.3}), b = gauss2(-0.4, 0.1, 0.7, {0.6, 0.3});
    CHECK(rel(gauge_iso(a, 0.0, GaugeDirection::forward), a) == 0.0);
    auto fa = gauge_iso(a, 0.9, GaugeDirection::forward);
    CHECK(rel(gauge_iso(fa, 0.9, GaugeDirection::inverse), a) <= 1e-14);
    for (std::size_t i = 0; i < a.n_t(); ++i)
        for (std::size_t p = 0; p < a.n_s(); ++p) {
            CHECK(std::abs(std::abs(fa(i, p)) - std::abs(a(i, p))) <= 1e-15);
            CHECK(std::abs(fa(i, p) - a(i, p) * std::polar(1.0, -0.45 * a.t(i) * a.s(p))) <= 1e-15);
        }
    for (double hbar : {0.5, 1.3}) {
        auto fwd = [&](const GridFunction2D &x) { return gauge_iso(x, hbar, GaugeDirection::forward); };
        CHECK(rel(fwd(twisted_conv(a, b, hbar)), other_twisted_conv(fwd(a), fwd(b), hbar)) <= 1e-6);
        // The literal orientation gauge_iso^{-1}(fwd a *_hbar fwd b) does not give *^_hbar.
        auto swapped = gauge_iso(twisted_conv(fwd(a), fwd(b), hbar), hbar, GaugeDirection::inverse);
        CHECK(rel(swapped, other_twisted_conv(a, b, hbar)) > 1e-3);
    }
}

TEST_CASE("Heisenberg group law") {
    const double hbar = 0.6;
    HeisenbergElement g{0.3, -1.0, std::polar(1.0, 0.2)}, h{1.1, 0.4, std::polar(1.0, -0.7)},
        k{-0.5, 0.9, 1.0};
    auto gh_k = group_mul(group_mul(g, h, hbar), k, hbar), g_hk = group_mul(g, group_mul(h, k, hbar), hbar);
    CHECK(std::abs(gh_k.x1 - g_hk.x1) <= 1e-15);
    CHECK(std::abs(gh_k.x2 - g_hk.x2) <= 1e-15);
    CHECK(std::abs(gh_k.alpha - g_hk.alpha) <= 1e-15);
    auto e = group_mul(g, group_inv(g), hbar);
    CHECK(e.x1 == 0.0);
    CHECK(e.x2 == 0.0);
    CHECK(std::abs(e.alpha - 1.0) <= 1e-15);
    // Commutator phase e^{i hbar omega(x, y)}.
    auto gh = group_mul(g, h, hbar), hg = group_mul(h, g, hbar);
    double omega = g.x1 * h.x2 - h.x1 * g.x2;
    CHECK(std::abs(gh.alpha / hg.alpha - std::polar(1.0, hbar * omega)) <= 1e-15);
}

TEST_CASE("group convolution equals the symplectic twisted convolution") {
    auto a = gauss2(0.3, -0.2, 0.8, 1.0, 8.0, 32), b = gauss2(-0.4, 0.1, 0.7, {0.6, 0.3}, 8.0, 32);
    for (double hbar : {0.3, 1.0})
        CHECK(rel(heisenberg_group_conv(a, b, hbar), other_twisted_conv(a, b, hbar)) <= 1e-10);
}

TEST_CASE("hbar rescaling") {
    // Direct change of variables: (a *^_h b)(x) = (1/h) (A *^_1 B)(h x1, x2) with
    // A(y) = a(y1 / h, y2), checked against analytic resampling.
    auto fa = [](double t, double s) { return complex(std::exp(-0.5 * ((t - 0.3) * (t - 0.3) + s * s) / 0.64)); };
    auto fb = [](double t, double s) { return complex(0.6, 0.3) * std::exp(-0.5 * (t * t + (s - 0.1) * (s - 0.1)) / 0.49); };
    for (double h : {0.5, 2.0}) {
        auto a = GridFunction2D::sample(8.0, 8.0, 64, 64, fa), b = GridFunction2D::sample(8.0, 8.0, 64, 64, fb);
        auto direct = other_twisted_conv(a, b, h);
        CHECK(rel(hbar_rescaled_conv(a, b, h), direct) <= 1e-6);
        auto A = GridFunction2D::sample(8.0 * h, 8.0, 64, 64, [&](double y1, double y2) { return fa(y1 / h, y2); });
        auto B = GridFunction2D::sample(8.0 * h, 8.0, 64, 64, [&](double y1, double y2) { return fb(y1 / h, y2); });
        GridFunction2D via(8.0, 8.0, 64, 64, other_twisted_conv(A, B, 1.0).values());
        via *= 1.0 / h;
        CHECK(rel(via, direct) <= 1e-6);
    }
    auto a = gauss2(0, 0, 1);
    CHECK_THROWS_AS(hbar_rescaled_conv(a, a, 0.0), input_error);
    CHECK_THROWS_AS(hbar_rescaled_conv(a, a, -1.0), input_error);
}

TEST_CASE("grid mismatch is an input error") {
    auto a = gauss2(0, 0, 1), b = gauss2(0, 0, 1, 1.0, 8.0, 32), c = gauss2(0, 0, 1, 1.0, 7.0, 64);
    CHECK_THROWS_AS(twisted_conv(a, b, 0.5), input_error);
    CHECK_THROWS_AS(other_twisted_conv(a, c, 0.5), input_error);
    CHECK_THROWS_AS(heisenberg_group_conv(a, b, 0.5), input_error);
}

TEST_CASE("hbar smoothness probe") {
    auto a = gauss2(0.3, -0.2, 0.8), b = gauss2(-0.4, 0.1, 0.7, {0.6, 0.3}), c = gauss2(0.2, 0.5, 0.9);
    for (double h0 : {0.1, 0.5, 1.0}) {
        auto p = hbar_smoothness_probe(a, b, h0, 1e-2);
        CHECK(p.ratio >= 3.5);
        CHECK(p.ratio <= 4.5);
        // Against a derivative from much smaller steps.
        const double e = 1e-5;
        GridFunction2D fd = twisted_conv(a, b, h0 + e);
        fd -= twisted_conv(a, b, h0 - e);
        fd *= 1.0 / (2 * e);
        CHECK(rel(p.derivative, fd) <= 1e-6);
    }
    GridFunction2D bc = b;
    bc += c;
    auto pbc = hbar_smoothness_probe(a, bc, 0.5, 1e-2);
    GridFunction2D sum = hbar_smoothness_probe(a, b, 0.5, 1e-2).derivative;
    sum += hbar_smoothness_probe(a, c, 0.5, 1e-2).derivative;
    CHECK(rel(pbc.derivative, sum) <= 1e-10);
    // b supported on the line u = 0: the phase does not depend on hbar.
    auto line = GridFunction2D::sample(8.0, 8.0, 64, 64, [](double u, double v) {
        return complex(u == 0.0 ? std::exp(-v * v) : 0.0);
    });
    CHECK(max_abs(hbar_smoothness_probe(a, line, 0.5, 1e-2).derivative.values()) <= 1e-12);
    CHECK_THROWS_AS(hbar_smoothness_probe(a, b, 0.5, 0.0), input_error);
}
