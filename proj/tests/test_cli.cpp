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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "cli.hpp"

using nctorus::io::json;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result call(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = nctorus::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

const std::string U4 = R"({"coeffs":{"radius_k":1,"radius_l":0,"coeffs":[[0,0],[0,0],[1,0]]},"q":{"rational":[1,4]}})";
const std::string V4 = R"({"coeffs":{"radius_k":0,"radius_l":1,"coeffs":[[0,0],[0,0],[1,0]]},"q":{"rational":[1,4]}})";
const std::string V5 = R"({"coeffs":{"radius_k":0,"radius_l":1,"coeffs":[[0,0],[0,0],[1,0]]},"q":{"rational":[1,5]}})";

const std::vector<std::string> subcommands{
    "torus-mul",   "torus-adjoint", "torus-seminorm", "torus-derive",   "torus-check-derivation",
    "matrep-eval", "circle-check",  "weyl-check",     "rep-lattice",    "solve-inner",
    "twisted-conv", "moyal-star",   "fourier-bridge", "hbar-probe",     "gns-build",
    "gns-check",   "suite"};

const std::vector<std::string> operations{
    "seminorm", "to_primed", "read_json", "q_mul", "adjoint", "trace", "d_power",
    "inner_derivation", "check_derivation_relation", "apply_derivation", "smooth_seminorm",
    "reorder_phase", "clock_shift", "eval_section", "equivariance_check", "circle_eval",
    "circle_check_relations", "apply_Q", "weyl_Q", "rep_lattice_measure", "calibrate_q",
    "solve_inner_generator", "twisted_conv", "other_twisted_conv", "gauge_iso",
    "heisenberg_group_conv", "moyal_star", "half_moyal", "fourier_bridge_error",
    "hbar_smoothness_probe", "is_positive", "gns_build", "state_action", "schwarz_check"};

nctorus::complex coeff(const json &element, int k, int l) {
    auto e = nctorus::io::read_element(element);
    return e(k, l);
}

} // namespace

TEST_CASE("every operation maps to exactly one subcommand") {
    const auto &table = nctorus::cli::coverage_table();
    std::set<std::string> valid(subcommands.begin(), subcommands.end());
    std::map<std::string, int> seen;
    std::set<std::string> used;
    for (const auto &[op, sub] : table) {
        ++seen[op];
        CHECK(valid.count(sub) == 1);
        used.insert(sub);
    }
    for (const auto &op : operations) {
        INFO(op);
        CHECK(seen[op] == 1);
    }
    for (const auto &[op, count] : seen)
        CHECK(count == 1);
    for (const auto &sub : subcommands)
        if (sub != "suite") {
            INFO(sub);
            CHECK(used.count(sub) == 1);
        }
    for (const auto &sub : subcommands) {
        auto r = call({sub, "--help"});
        INFO(sub);
        CHECK(r.code == 0);
    }
}

TEST_CASE("torus-mul on U and V") {
    auto uv = call({"torus-mul", U4, V4});
    REQUIRE(uv.code == 0);
    auto j = json::parse(uv.out);
    CHECK(std::abs(coeff(j, 1, 1) - 1.0) <= 1e-15);
    auto vu = call({"torus-mul", V4, U4});
    REQUIRE(vu.code == 0);
    CHECK(std::abs(coeff(json::parse(vu.out), 1, 1) - std::polar(1.0, -std::numbers::pi / 2)) <= 1e-15);
    auto comm = call({"torus-mul", "--commutator", U4, V4});
    REQUIRE(comm.code == 0);
    CHECK(std::abs(coeff(json::parse(comm.out), 1, 1) - (1.0 - std::polar(1.0, -std::numbers::pi / 2))) <= 1e-15);
}

TEST_CASE("exit codes and field names") {
    auto mismatch = call({"torus-mul", U4, V5});
    CHECK(mismatch.code == 2);
    CHECK(mismatch.err.find("q") != std::string::npos);
    auto missing = call({"torus-mul", U4});
    CHECK(missing.code == 2);
    CHECK(missing.err.find("inputs") != std::string::npos);
    CHECK(call({"no-such-command"}).code == 2);
    CHECK(call({}).code == 2);
    CHECK(call({"torus-mul", "--bogus", U4, V4}).code == 2);
    auto badq = call({"matrep-eval", "--clock-shift", "--q", "x/y"});
    CHECK(badq.code == 2);
    CHECK(badq.err.find("q") != std::string::npos);
    auto nofile = call({"torus-adjoint", "/nonexistent/file.json"});
    CHECK(nofile.code == 2);
    // D(U) = V, D(V) = 0 violates the derivation relation for q != 1.
    std::string du = R"({"radius_k":0,"radius_l":1,"coeffs":[[0,0],[0,0],[1,0]]})";
    std::string dv = R"({"radius_k":0,"radius_l":0,"coeffs":[[0,0]]})";
    auto bad = call({"torus-check-derivation", "--q", "1/5", "--du", du, "--dv", dv});
    CHECK(bad.code == 1);
    auto rep = json::parse(bad.out);
    CHECK(rep["pass"] == false);
    CHECK(rep.dump().find("residual") != std::string::npos);
    CHECK(bad.err.find("derivation") != std::string::npos);
    std::string ok_du = R"({"radius_k":1,"radius_l":0,"coeffs":[[0,0],[0,0],[1,0]]})";
    CHECK(call({"torus-check-derivation", "--q", "1/5", "--du", ok_du, "--dv", dv}).code == 0);
}

TEST_CASE("output goes to --out") {
    auto path = std::filesystem::temp_directory_path() / "nctorus_cli_out.json";
    std::filesystem::remove(path);
    auto r = call({"torus-mul", "--out", path.string(), U4, V4});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    json j = json::parse(in);
    CHECK(std::abs(coeff(j, 1, 1) - 1.0) <= 1e-15);
    std::filesystem::remove(path);
}

TEST_CASE("identical arguments give identical bytes") {
    std::vector<std::vector<std::string>> runs{
        {"torus-mul", U4, V4},
        {"matrep-eval", "--clock-shift", "--q", "2/7"},
        {"moyal-star", "--order", "3", R"({"nvars":2,"terms":[{"exps":[2,1],"re":1,"im":0}]})",
         R"({"nvars":2,"terms":[{"exps":[1,3],"re":0,"im":1}]})"},
        {"weyl-check", "--hbar", "0.3", "--calibrate", "1.0", "--seed", "7"},
    };
    for (const auto &args : runs) {
        auto a = call(args), b = call(args);
        INFO(args[0]);
        CHECK(a.code == b.code);
        CHECK(a.out == b.out);
    }
}
