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
#include <string>
#include <utility>
#include <vector>

#include "nctorus/error.hpp"
#include "nctorus/phase.hpp"

namespace nctorus {

/// One letter S_index^{+1} or S_index^{-1} of a word in the generators of
/// the n-dimensional torus.
struct Letter {
    int index = 1; ///< 1-based generator index
    int sign = 1;  ///< +1 or -1
};

struct NormalOrdered {
    std::vector<int> exponents; ///< k_1..k_n of S_1^{k_1} ... S_n^{k_n}
    std::int64_t phase_exponent = 0;
    complex phase{1.0, 0.0}; ///< q^{phase_exponent}
};

/// Brings a word into the normal order S_1^{k_1} ... S_n^{k_n} using only
/// adjacent transpositions of letters and the relations
/// S_i S_{i+1} = q S_{i+1} S_i and S_i S_j = S_j S_i for |i - j| >= 2.
/// The resulting scalar is word = phase * normal-ordered monomial.
inline NormalOrdered reorder_phase(std::vector<Letter> word, int n, const PhaseQ &q) {
    if (n < 1)
        throw input_error("n", "number of generators must be at least 1");
    for (const auto &x : word) {
        if (x.index < 1 || x.index > n)
            throw input_error("word", "generator index " + std::to_string(x.index) +
                                          " outside 1.." + std::to_string(n));
        if (x.sign != 1 && x.sign != -1)
            throw input_error("word", "letter exponent must be +1 or -1");
    }
    NormalOrdered out;
    // Stable bubble sort. Moving S_{i+1}^b to the right of S_i^a costs q^{-ab}
    // since S_i^a S_{i+1}^b = q^{ab} S_{i+1}^b S_i^a.
    for (std::size_t end = word.size(); end > 1; --end) {
        bool swapped = false;
        for (std::size_t j = 0; j + 1 < end; ++j) {
            Letter &left = word[j];
            Letter &right = word[j + 1];
            if (left.index <= right.index)
                continue;
            if (left.index == right.index + 1)
                out.phase_exponent -= static_cast<std::int64_t>(left.sign) * right.sign;
            std::swap(left, right);
            swapped = true;
        }
        if (!swapped)
            break;
    }
    out.exponents.assign(static_cast<std::size_t>(n), 0);
    for (const auto &x : word)
        out.exponents[static_cast<std::size_t>(x.index - 1)] += x.sign;
    out.phase = q.pow(out.phase_exponent);
    return out;
}

/// Concatenates words (monomial product before reordering).
inline std::vector<Letter> concat(std::vector<Letter> a, const std::vector<Letter> &b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

} // namespace nctorus
