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

#include <cstdio>
#include <stdexcept>
#include <string>
#include <utility>

namespace nctorus {

/// Malformed or inconsistent input: bad documents, mismatched deformation
/// parameters, out-of-range indices. The CLI maps this to exit code 2.
class input_error : public std::invalid_argument {
public:
    input_error(std::string field, const std::string &what)
        : std::invalid_argument(field.empty() ? what : field + ": " + what),
          field_(std::move(field)) {}

    /// Name (or JSON pointer) of the offending field; may be empty.
    const std::string &field() const noexcept { return field_; }

private:
    std::string field_;
};

/// A numerical identity or precondition failed beyond its tolerance.
/// The CLI maps this to exit code 1.
class tolerance_error : public std::runtime_error {
public:
    tolerance_error(const std::string &what, double residual)
        : std::runtime_error(what + " (residual " + format(residual) + ")"),
          residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    static std::string format(double x) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3e", x);
        return buf;
    }

    double residual_;
};

} // namespace nctorus
