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

// Walks through the library and writes grid fixtures for the CLI walkthrough
// in run_demo.sh.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "nctorus/io.hpp"
#include "nctorus/nctorus.hpp"

using namespace nctorus;

namespace {

GridFunction2D gaussian(double t0, double s0, double w, double L = 8.0, std::size_t n = 64) {
    return GridFunction2D::sample(L, L, n, n, [=](double t, double s) {
        double r2 = ((t - t0) * (t - t0) + (s - s0) * (s - s0)) / (w * w);
        return complex(std::exp(-0.5 * r2), 0.0);
    });
}

void save(const std::string &dir, const std::string &name, const io::json &j) {
    std::ofstream(dir + "/" + name) << j.dump() << "\n";
}

} // namespace

int main(int argc, char **argv) {
    const std::string dir = argc > 1 ? argv[1] : ".";

    // Rational torus at q = e^{2 pi i/5}.
    auto q = PhaseQ::rational(1, 5);
    auto U = TorusElement::monomial(1, 0, q), V = TorusElement::monomial(0, 1, q);
    auto uv = q_mul(U, V), vu = q_mul(V, U);
    std::printf("UV - qVU            %.2e\n", max_abs_diff(uv, q.value() * vu));

    auto [U0, V0] = clock_shift(q);
    std::printf("U0 V0 - q V0 U0     %.2e\n", op_norm(U0 * V0 - q.value() * V0 * U0));

    auto circle = CircleSpec::with_bezout(2, 3, q);
    std::printf("circle (2,3) a'=%d b'=%d residual %.2e\n", circle.a_prime(), circle.b_prime(),
                circle_check_relations(circle, circle_samples()));

    // Heisenberg representation: q recovered from the Weyl relation.
    auto qc = calibrate_q(1.0, 0.5);
    std::printf("calibrated theta    %.12f (sigma^2 hbar = 0.5)\n", qc.theta());

    // Twisted convolution and the gauge map.
    const double hbar = 0.7;
    auto a = gaussian(0.5, -0.3, 0.9), b = gaussian(-0.4, 0.2, 1.1);
    auto lhs = gauge_iso(twisted_conv(a, b, hbar), hbar, GaugeDirection::forward);
    auto rhs = other_twisted_conv(gauge_iso(a, hbar, GaugeDirection::forward),
                                  gauge_iso(b, hbar, GaugeDirection::forward), hbar);
    GridFunction2D diff = lhs;
    diff -= rhs;
    std::printf("gauge transport     %.2e\n", l2_norm(diff) / l2_norm(rhs));

    // Moyal product of the coordinates.
    PolySymbol x1 = PolySymbol::variable(2, 1), x2 = PolySymbol::variable(2, 2);
    auto comm = moyal_star(x1, x2, 2) - moyal_star(x2, x1, 2);
    std::printf("x1*x2 - x2*x1       hbar^1 coefficient %s\n",
                io::write_poly(comm[1]).dump().c_str());

    auto fb = gaussian(0.0, 0.0, 1.0, 12.0, 128), gb = gaussian(0.3, -0.2, 1.2, 12.0, 128);
    for (int K : {0, 2, 4})
        std::printf("bridge error K=%d    %.2e\n", K, fourier_bridge_error(fb, gb, 0.05, K));

    // GNS of the trace on the N = 3 quotient.
    auto A = FiniteAlgebra::torus_quotient(PhaseQ::rational(1, 3));
    auto T = gns_build(PositiveForm::trace(A), A);
    std::printf("GNS trace           dim %zu\n", static_cast<std::size_t>(T.quotient_dim));

    // Fixtures for run_demo.sh.
    save(dir, "a.json", io::write_grid2d(a));
    save(dir, "b.json", io::write_grid2d(b));
    auto b0 = GridFunction2D::sample(8.0, 8.0, 64, 64, [](double t, double s) {
        return complex(std::exp(-0.5 * (t * t + s * s)), 0.0);
    });
    DerivationData d{b0.zeros_like(), b0.zeros_like(), hbar};
    for (std::size_t i = 0; i < b0.n_t(); ++i)
        for (std::size_t p = 0; p < b0.n_s(); ++p) {
            d.a_Q(i, p) = b0(i, p) * b0.s(p) * hbar;
            d.a_P(i, p) = -b0(i, p) * b0.t(i) * hbar;
        }
    save(dir, "inner.json",
         {{"a_Q", io::write_grid2d(d.a_Q)}, {"a_P", io::write_grid2d(d.a_P)}, {"hbar", hbar}});
    return 0;
}
