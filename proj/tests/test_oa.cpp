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

#include <gtest/gtest.h>

#include <map>

#include "ame/factor6.hpp"
#include "ame/oa.hpp"
#include "helpers.hpp"

using namespace ame;
using testing_util::random_matrix;
using testing_util::random_superregular;
using testing_util::rows_of;

namespace {

oracle::Rows array_rows(const OrthogonalArray &arr) {
    oracle::Rows out;
    for (std::size_t r = 0; r < arr.rows(); ++r) {
        auto row = arr.row(r);
        out.emplace_back(row.begin(), row.end());
    }
    return out;
}

/// Largest s with every s-subset orthogonal, by direct tuple counting.
std::size_t oracle_strength(const oracle::Rows &rows, std::uint32_t d, std::size_t k) {
    std::size_t best = 0;
    for (std::size_t s = 1; s <= k; ++s) {
        for (const auto &cols : oracle::subsets(k, s)) {
            if (!oracle::orthogonal(rows, d, cols)) {
                return best;
            }
        }
        best = s;
    }
    return best;
}

}  // namespace

TEST(TupleCodes, RoundTrip) {
    for (std::size_t code = 0; code < 125; ++code) {
        auto t = decode_tuple(code, 5, 3);
        EXPECT_EQ(encode_tuple(t, 5), code);
    }
    auto t = decode_tuple(7, 3, 2);  // 7 = 2*3 + 1, first coordinate most significant
    EXPECT_EQ(t, (std::vector<std::uint32_t>{2, 1}));
}

TEST(ClassicalMap, FromMatrixAndBijectivity) {
    Field f(5);
    auto g = Matrix::from_rows(f, {{1, 1}, {1, 2}});
    auto u = map_from_matrix(g);
    EXPECT_TRUE(is_bijective(u));
    EXPECT_EQ(u.size(), 25u);
    // (a1, a2) = (1, 2) -> (3, 0)
    std::vector<std::uint32_t> in{1, 2};
    EXPECT_EQ(decode_tuple(u.table[encode_tuple(in, 5)], 5, 2), (std::vector<std::uint32_t>{3, 0}));
    EXPECT_THROW(map_from_matrix(Matrix::from_rows(f, {{1, 2}, {2, 4}})), SingularMatrixError);
}

TEST(OrthogonalArray, Table1GateOverZ3) {
    Field f(3);
    auto arr = array_from_matrix(Matrix::from_rows(f, {{1, 1}, {1, -1}}));
    EXPECT_EQ(arr.rows(), 9u);
    EXPECT_EQ(arr.columns(), 4u);
    EXPECT_EQ(strength(arr), 2u);
    EXPECT_EQ(arr.declared_strength(), 2u);
    EXPECT_TRUE(failing_subsets(arr, 2).empty());
    EXPECT_EQ(oracle_strength(array_rows(arr), 3, 4), 2u);
}

TEST(OrthogonalArray, RowsMatchDirectEvaluation) {
    std::mt19937 rng(21);
    Field f(2, 3);
    auto o = oracle::binary(3, 0b1011);
    for (int t = 0; t < 10; ++t) {
        auto g = random_matrix(rng, f, 3, 3);
        if (det(g) == 0) {
            continue;
        }
        EXPECT_EQ(array_rows(array_from_matrix(g)), oracle::array_rows(o, rows_of(g)));
    }
}

TEST(OrthogonalArray, StrengthEqualsSuperregularityGf5) {
    std::mt19937 rng(22);
    Field f(5);
    auto o = oracle::prime(5);
    int checked = 0, ame = 0;
    while (checked < 100) {
        auto g = checked % 3 == 0 ? random_superregular(rng, f, 3) : random_matrix(rng, f, 3, 3);
        if (det(g) == 0) {
            continue;
        }
        ++checked;
        auto arr = array_from_matrix(g);
        bool sr = oracle::superregular(o, rows_of(g));
        ame += sr;
        EXPECT_EQ(strength(arr) == 3, sr) << g.to_string();
        EXPECT_EQ(oracle_strength(array_rows(arr), 5, 6) == 3, sr);
    }
    EXPECT_GT(ame, 30);
}

TEST(OrthogonalArray, Gf7ExampleHasStrengthFour) {
    Field f(7);
    auto g = Matrix::from_rows(f, {{1, 1, 1, 1}, {1, 2, 3, 5}, {1, 3, 2, 6}, {1, 6, 5, 4}});
    auto arr = array_from_matrix(g);
    EXPECT_EQ(arr.rows(), 2401u);
    EXPECT_EQ(strength(arr), 4u);
    auto rows = array_rows(arr);
    for (const auto &cols : oracle::subsets(8, 4)) {
        ASSERT_TRUE(oracle::orthogonal(rows, 7, cols));
    }
}

TEST(OrthogonalArray, FailingSubsetsAgreeWithOracle) {
    Field f(5);
    auto g = Matrix::from_rows(f, {{1, 2, 3}, {2, 1, 1}, {1, 1, 1}});
    ASSERT_NE(det(g), 0u);
    auto arr = array_from_matrix(g);
    auto rows = array_rows(arr);
    std::vector<std::vector<std::size_t>> expect;
    auto subs = oracle::subsets(6, 3);
    std::sort(subs.begin(), subs.end());
    for (const auto &cols : subs) {
        if (!oracle::orthogonal(rows, 5, cols)) {
            expect.push_back(cols);
        }
    }
    EXPECT_FALSE(expect.empty());
    EXPECT_EQ(failing_subsets(arr, 3), expect);
}

TEST(OrthogonalArray, RejectsBadInput) {
    EXPECT_THROW(OrthogonalArray(1, 2, {0, 0}), DimensionError);
    EXPECT_THROW(OrthogonalArray(2, 2, {0, 1, 1}), DimensionError);
    EXPECT_THROW(OrthogonalArray(2, 2, {0, 2}), DimensionError);
    OrthogonalArray arr(2, 2, {0, 0, 0, 1, 1, 0, 1, 1});
    std::vector<std::size_t> bad{0, 2};
    EXPECT_THROW(subset_orthogonal(arr, bad), DimensionError);
    EXPECT_EQ(strength(arr), 2u);
}

TEST(GateReshuffles, PerfectIffSuperregular2x2) {
    Field f(5);
    int perfect = 0;
    for (Code a = 0; a < 5; ++a) {
        for (Code b = 0; b < 5; ++b) {
            for (Code c = 0; c < 5; ++c) {
                for (Code d = 0; d < 5; ++d) {
                    Matrix g(f, 2, 2, {a, b, c, d});
                    if (det(g) == 0) {
                        continue;
                    }
                    auto r = gate_reshuffles(map_from_matrix(g));
                    EXPECT_TRUE(r.u_ok);
                    EXPECT_EQ(r.perfect(), all_minors_nonzero(g));
                    auto rows = oracle::array_rows(oracle::prime(5), rows_of(g));
                    EXPECT_EQ(r.ut_ok, oracle::orthogonal(rows, 5, {0, 3}) && oracle::orthogonal(rows, 5, {2, 1}));
                    EXPECT_EQ(r.ur_ok, oracle::orthogonal(rows, 5, {0, 2}) && oracle::orthogonal(rows, 5, {1, 3}));
                    perfect += r.perfect();
                }
            }
        }
    }
    EXPECT_EQ(perfect, 4 * 4 * 4 * 4 - 4 * 4 * 4);  // nonzero entries with ad != bc: 256 - 64
}

TEST(Bipartitions, Example2AllMaximal) {
    Field f(5);
    auto g = Matrix::from_rows(f, {{1, 1, 1}, {1, 2, 3}, {1, 3, 4}});
    auto report = bipartition_report(array_from_matrix(g), DecompositionDirection::forward);
    EXPECT_EQ(report.subsets.size(), 20u);
    EXPECT_EQ(report.bipartitions.size(), 10u);
    EXPECT_TRUE(report.all_maximal());
    EXPECT_EQ(report.strength, 3u);
    std::map<BipartitionLabel, int> counts;
    for (const auto &b : report.bipartitions) {
        ++counts[b.label];
        EXPECT_EQ(b.side.front(), 1u);
        EXPECT_EQ(b.side.size() + b.complement.size(), 6u);
    }
    EXPECT_EQ(counts[BipartitionLabel::hexagonal], 3);
    EXPECT_EQ(counts[BipartitionLabel::perfect_gates], 3);
    EXPECT_EQ(counts[BipartitionLabel::residual], 4);
}

TEST(Bipartitions, BackwardLabelsMirrorForward) {
    Field f(5);
    auto arr = array_from_matrix(Matrix::from_rows(f, {{1, 1, 1}, {1, 2, 3}, {1, 3, 4}}));
    auto fw = bipartition_report(arr, DecompositionDirection::forward);
    auto bw = bipartition_report(arr, DecompositionDirection::backward);
    auto find = [](const BipartitionReport &r, std::vector<std::size_t> side) {
        for (const auto &b : r.bipartitions) {
            if (b.side == side) {
                return b.label;
            }
        }
        return BipartitionLabel::unlabeled;
    };
    // Sites 1<->3 and 4<->6 exchanged: {1,2,4} -> {3,2,6} whose complement {1,4,5}.
    EXPECT_EQ(find(bw, {1, 4, 5}), find(fw, {1, 2, 4}));
    EXPECT_EQ(find(bw, {1, 2, 3}), BipartitionLabel::hexagonal);
    EXPECT_EQ(find(bw, {1, 2, 4}), find(fw, {1, 4, 5}));
    auto none = bipartition_report(arr, DecompositionDirection::none);
    for (const auto &b : none.bipartitions) {
        EXPECT_EQ(b.label, BipartitionLabel::unlabeled);
    }
}

TEST(Bipartitions, RejectsWrongShape) {
    Field f(3);
    auto arr = array_from_matrix(Matrix::from_rows(f, {{1, 1}, {1, 2}}));
    EXPECT_THROW(bipartition_report(arr, DecompositionDirection::forward), DimensionError);
}

// Three perfect two-site gates composed forward always give maximal
// entanglement across the hexagonal and gate-aligned cuts; the remaining
// cuts are not guaranteed.
TEST(Bipartitions, PerfectGateNetworksGf5AndGf7) {
    std::mt19937 rng(23);
    for (auto p : {5u, 7u}) {
        Field f(p);
        auto o = oracle::prime(p);
        int residual_failures = 0;
        for (int t = 0; t < 200; ++t) {
            auto a = random_superregular(rng, f, 2), b = random_superregular(rng, f, 2),
                 c = random_superregular(rng, f, 2);
            Matrix g = embed6(c, Slot::C) * embed6(b, Slot::B) * embed6(a, Slot::A);
            auto arr = array_from_matrix(g);
            auto report = bipartition_report(arr, DecompositionDirection::forward);
            ASSERT_TRUE(report.all_maximal(BipartitionLabel::hexagonal));
            ASSERT_TRUE(report.all_maximal(BipartitionLabel::perfect_gates));
            auto rows = oracle::array_rows(o, rows_of(g));
            for (const auto &bp : report.bipartitions) {
                std::vector<std::size_t> side, comp;
                for (auto s : bp.side) {
                    side.push_back(s - 1);
                }
                for (auto s : bp.complement) {
                    comp.push_back(s - 1);
                }
                ASSERT_EQ(bp.maximal, oracle::orthogonal(rows, p, side) && oracle::orthogonal(rows, p, comp));
            }
            residual_failures += !report.all_maximal(BipartitionLabel::residual);
        }
        EXPECT_GT(residual_failures, 0) << "GF(" << p << ")";
    }
}

TEST(Bush, KnownCases) {
    EXPECT_EQ(bush_feasibility(2, 6).feasibility, Feasibility::infeasible);
    EXPECT_EQ(bush_feasibility(3, 6).feasibility, Feasibility::infeasible);
    EXPECT_EQ(bush_feasibility(4, 6).feasibility, Feasibility::not_excluded);
    EXPECT_EQ(bush_feasibility(5, 6).feasibility, Feasibility::not_excluded);
    EXPECT_EQ(bush_feasibility(6, 6).feasibility, Feasibility::infeasible);
    EXPECT_EQ(bush_feasibility(4, 8).feasibility, Feasibility::infeasible);
    EXPECT_EQ(bush_feasibility(5, 8).feasibility, Feasibility::infeasible);
    EXPECT_EQ(bush_feasibility(6, 8).feasibility, Feasibility::infeasible);
    EXPECT_EQ(bush_feasibility(7, 8).feasibility, Feasibility::not_excluded);
    EXPECT_FALSE(bush_feasibility(2, 6).citation.empty());
    EXPECT_THROW(bush_feasibility(5, 4), DimensionError);
}
