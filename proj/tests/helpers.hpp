// Copyright 2026 The ame-toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <vector>

#include "ame/matrix.hpp"
#include "oracles.hpp"

namespace testing_util {

inline oracle::Rows rows_of(const ame::Matrix &m) {
    oracle::Rows out(m.rows(), std::vector<std::uint32_t>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            out[i][j] = m.code(i, j);
        }
    }
    return out;
}

inline ame::Matrix matrix_of(const ame::Field &f, const oracle::Rows &r) {
    std::vector<ame::Code> codes;
    for (const auto &row : r) {
        codes.insert(codes.end(), row.begin(), row.end());
    }
    return ame::Matrix(f, r.size(), r[0].size(), codes);
}

inline ame::Matrix random_matrix(std::mt19937 &rng, const ame::Field &f, std::size_t r, std::size_t c) {
    return matrix_of(f, oracle::random_rows(rng, f.order(), r, c));
}

/// Rejection-samples a superregular matrix.
inline ame::Matrix random_superregular(std::mt19937 &rng, const ame::Field &f, std::size_t n) {
    while (true) {
        auto m = random_matrix(rng, f, n, n);
        if (ame::all_minors_nonzero(m)) {
            return m;
        }
    }
}

}  // namespace testing_util
