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

#include <chrono>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include "nctorus/suite.hpp"

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

struct Captured {
    int status = -1;
    std::string out;
};

Captured capture(const std::string &cmd) {
    Captured c;
    FILE *p = popen(cmd.c_str(), "r");
    if (!p)
        return c;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0)
        c.out.append(buf, n);
    c.status = pclose(p);
    return c;
}

void line(bool pass, int id, const std::string &name, const std::string &info) {
    std::cout << (pass ? "PASS" : "FAIL") << "  " << std::setw(2) << id << "  " << name << "  "
              << info << "\n";
}

} // namespace

int main() {
    const std::uint64_t seed = 42;
    const double limits[] = {1, 10, 5, 30, 5, 10, 20, 60, 60, 30, 20, 20};
    bool all = true;
    int id = 0;
    for (auto fn : nctorus::suite::criteria()) {
        ++id;
        auto t0 = clock_type::now();
        nctorus::suite::CriterionResult r;
        std::string error;
        try {
            r = fn(seed);
        } catch (const std::exception &e) {
            r.id = id;
            r.name = "criterion " + std::to_string(id);
            r.pass = false;
            error = e.what();
        }
        double dt = seconds_since(t0);
        double limit = limits[id - 1];
        bool pass = r.pass && dt < limit;
        std::ostringstream info;
        info << std::setprecision(3) << "residual/bound=" << r.residual << " time=" << dt << "s (<"
             << limit << "s)";
        if (!error.empty())
            info << " error: " << error;
        if (!r.pass)
            for (const auto &[k, v] : r.details.items())
                if (v.is_object() && v.contains("pass") && v["pass"] == false)
                    info << " [" << k << ": " << v.dump() << "]";
        line(pass, id, r.name, info.str());
        all = all && pass;
    }

    // Determinism of the CLI battery across thread counts.
    auto t0 = clock_type::now();
    const std::string tool = NCTORUS_TOOL_PATH;
    auto a = capture("NCTORUS_THREADS=1 '" + tool + "' suite --seed 42");
    auto b = capture("NCTORUS_THREADS=4 '" + tool + "' suite --seed 42");
    double dt = seconds_since(t0);
    bool same = !a.out.empty() && a.out == b.out;
    bool ok = same && a.status == 0 && b.status == 0 && dt < 300.0;
    std::ostringstream info;
    info << std::setprecision(4) << "bytes=" << a.out.size() << "/" << b.out.size()
         << " identical=" << (same ? "yes" : "no") << " exit=" << a.status << "/" << b.status
         << " time=" << dt << "s (<300s)";
    line(ok, 13, "determinism across NCTORUS_THREADS", info.str());
    all = all && ok;

    std::cout << (all ? "ALL PASS" : "SOME CRITERIA FAILED") << "\n";
    return all ? 0 : 1;
}
