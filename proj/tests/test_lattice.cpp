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

#include "nctorus/io.hpp"
#include "nctorus/random.hpp"
#include "support.hpp"

using namespace nctorus;
using Catch::Approx;

TEST_CASE("PhaseQ normalizes rational parameters") {
    auto q = PhaseQ::rational(2, 8);
    CHECK(q.is_rational());
    CHECK(q.order() == 4);
    CHECK(std::abs(q.value() - complex(0, 1)) < 1e-15);
    CHECK(PhaseQ::rational(0, 7).order() == 1);
    CHECK(PhaseQ::rational(3, 4).order() == 4);
    CHECK(std::abs(PhaseQ::rational(3, 4).value() - complex(0, -1)) < 1e-15);
    CHECK_THROWS_AS(PhaseQ::rational(1, 0), input_error);
    CHECK_THROWS_AS(PhaseQ::irrational(std::nan("")), input_error);
}

TEST_CASE("PhaseQ powers reduce exactly for rational q") {
    auto q = PhaseQ::rational(1, 5);
    for (long n : {-1000003L, -7L, 0L, 3L, 5L, 1000000007L})
        CHECK(std::abs(q.pow(n) - std::polar(1.0, 2.0 * std::numbers::pi * ((n % 5 + 5) % 5) / 5.0)) <
              1e-14);
    CHECK(std::abs(q.pow(5) - 1.0) == 0.0);
    auto r = PhaseQ::irrational(0.3);
    for (long n : {-4L, 0L, 9L})
        CHECK(std::abs(r.pow(n) - std::polar(1.0, 0.3 * n)) < 1e-14);
    CHECK(std::abs(std::abs(r.value()) - 1.0) < 1e-14);
}

TEST_CASE("require_same_q rejects different parameters") {
    CHECK_NOTHROW(require_same_q(PhaseQ::rational(1, 4), PhaseQ::rational(2, 8)));
    CHECK_THROWS_AS(require_same_q(PhaseQ::rational(1, 4), PhaseQ::rational(1, 5)), input_error);
    CHECK_THROWS_AS(require_same_q(PhaseQ::rational(1, 4), PhaseQ::irrational(std::numbers::pi / 2)),
                    input_error);
}

TEST_CASE("lattice reads outside the box are zero") {
    auto f = CoeffLattice2::delta(1, -2, {3, 4});
    CHECK(f.radius_k() == 1);
    CHECK(f.radius_l() == 2);
    CHECK(f(1, -2) == complex(3, 4));
    CHECK(f(7, 7) == complex{});
    CHECK(f(-1, 2) == complex{});
    CHECK_THROWS_AS(f.ref(2, 0), input_error);
    CHECK(f.padded(5, 5) == f);
    CHECK_THROWS_AS(CoeffLattice2(1, 0, std::vector<complex>(2)), input_error);
}

TEST_CASE("seminorm examples") {
    CHECK(seminorm(CoeffLattice2::delta(0, 0), 5) == 1.0);
    CHECK(seminorm(CoeffLattice2::delta(1, 0), 3) == 8.0);
    CHECK(seminorm(CoeffLattice2::delta(1, 0) + CoeffLattice2::delta(0, 1), 2) == 4.0);
    CHECK(seminorm(CoeffLattice2{}, 3) == 0.0);
}

TEST_CASE("seminorm is homogeneous, subadditive and monotone in m") {
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        auto f = rng.lattice(4), g = rng.lattice(4);
        complex a = rng.unit_disk_complex() * 3.0;
        for (int m = 0; m <= 4; ++m) {
            CHECK(seminorm(a * f, m) == Approx(std::abs(a) * seminorm(f, m)).epsilon(1e-13));
            CHECK(seminorm(f + g, m) <= seminorm(f, m) + seminorm(g, m) + 1e-14);
            CHECK(seminorm(f, m) <= seminorm(f, m + 1) + 1e-15);
        }
    }
}

TEST_CASE("to_primed examples and inverse") {
    auto q = PhaseQ::irrational(std::numbers::pi);
    CHECK(to_primed(CoeffLattice2::delta(1, 0), q) == CoeffLattice2::delta(1, 0));
    CHECK(std::abs(to_primed(CoeffLattice2::delta(1, 1), q)(1, 1) - complex(0, 1)) < 1e-15);
    Rng rng(3);
    auto f = rng.lattice(4);
    CHECK(max_abs_diff(to_primed(f, PhaseQ::irrational(0.0)), f) == 0.0);
    for (auto qq : {PhaseQ::rational(2, 7), PhaseQ::irrational(1.1), PhaseQ::rational(1, 2),
                    PhaseQ::irrational(std::numbers::pi)}) {
        if (std::abs(qq.theta()) < std::numbers::pi)
            CHECK(max_abs_diff(to_primed(to_primed(f, qq), qq.conjugate()), f) <= 1e-14);
        CHECK(max_abs_diff(from_primed(to_primed(f, qq), qq), f) <= 1e-14);
        // Direct evaluation of f_{k,l} e^{i theta k l / 2}.
        auto g = to_primed(f, qq);
        f.for_each([&](int k, int l, complex c) {
            CHECK(std::abs(g(k, l) - c * std::polar(1.0, qq.theta() * k * l / 2.0)) < 1e-13);
        });
    }
}

TEST_CASE("q = -1 is its own conjugate, so only from_primed inverts there") {
    auto q = PhaseQ::rational(1, 2);
    auto f = CoeffLattice2::delta(1, 1);
    CHECK(q.conjugate() == q);
    CHECK(std::abs(to_primed(to_primed(f, q.conjugate()), q)(1, 1) - complex(-1.0)) < 1e-15);
    CHECK(max_abs_diff(from_primed(to_primed(f, q), q), f) <= 1e-15);
}

TEST_CASE("truncation reports the discarded tail") {
    CoeffLattice2 f(2, 2);
    f.ref(0, 0) = 1.0;
    f.ref(2, -1) = {0, -0.25};
    f.ref(-1, 1) = 0.5;
    auto t = truncate(f, 1, 1);
    CHECK(t.kept(0, 0) == complex(1.0));
    CHECK(t.kept(-1, 1) == complex(0.5));
    CHECK(t.kept(2, -1) == complex{});
    CHECK(t.tail_sup == 0.25);
    CHECK(t.tail_sup == seminorm(f - t.kept, 0));
}

TEST_CASE("lattice JSON round trip and errors") {
    auto unit = io::read_lattice(io::parse(R"({"radius_k":0,"radius_l":0,"coeffs":[[1.0,0.0]]})"));
    CHECK(unit == CoeffLattice2::delta(0, 0));

    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        auto f = rng.lattice(3);
        auto text = io::write_lattice(f).dump();
        auto g = io::read_lattice(io::parse(text));
        CHECK(g.radius_k() == f.radius_k());
        CHECK(g.radius_l() == f.radius_l());
        CHECK(g == f);
        CHECK(io::write_lattice(g).dump() == text);
    }

    try {
        io::read_lattice(io::parse(R"({"radius_k":1,"radius_l":0,"coeffs":[[1,0],[0,0]]})"));
        FAIL("arity mismatch accepted");
    } catch (const input_error &e) {
        CHECK(e.field() == "coeffs");
        CHECK(std::string(e.what()).find("expected 3") != std::string::npos);
    }
    CHECK_THROWS_AS(io::parse("{\"radius_k\": 1,"), input_error);
    CHECK_THROWS_AS(io::read_lattice(io::parse(R"({"radius_k":0,"radius_l":0,"coeffs":[["x",0]]})")),
                    input_error);
    CHECK_THROWS_AS(io::read_lattice(io::parse(R"({"radius_k":-1,"radius_l":0,"coeffs":[]})")),
                    input_error);
}

TEST_CASE("phase JSON forms") {
    auto q = io::read_phase(io::parse(R"({"rational":[3,12]})"));
    CHECK(q.is_rational());
    CHECK(q.order() == 4);
    CHECK(io::write_phase(q).dump() == R"({"rational":[1,4]})");
    auto r = io::read_phase(io::parse(R"({"theta":0.25})"));
    CHECK(!r.is_rational());
    CHECK(r.theta() == 0.25);
    CHECK_THROWS_AS(io::read_phase(io::parse(R"({"rational":[1]})")), input_error);
    CHECK_THROWS_AS(io::read_phase(io::parse(R"({"phi":1})")), input_error);
}
