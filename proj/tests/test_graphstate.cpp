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

#include <complex>
#include <numbers>

#include "ame/factor6.hpp"
#include "ame/factor8.hpp"
#include "ame/graphstate.hpp"
#include "ame/oa.hpp"
#include "helpers.hpp"

using namespace ame;
using testing_util::random_matrix;
using testing_util::random_superregular;

namespace {

using Edges = std::vector<std::array<std::int64_t, 3>>;

Matrix example2() {
    return Matrix::from_rows(Field(5), {{1, 1, 1}, {1, 2, 3}, {1, 3, 4}});
}

Edges hexagon_cycle() {
    Edges e;
    for (std::int64_t i = 1; i <= 6; ++i) {
        e.push_back({i, i % 6 + 1, 1});
    }
    return e;
}

/// Direct evaluation of a graph-state amplitude from the weight matrix.
std::complex<double> oracle_amplitude(const IncidenceMatrix &l, std::size_t index) {
    std::uint32_t d = l.dimension();
    std::size_t k = l.sites();
    std::vector<std::int64_t> a(k);
    for (std::size_t i = k; i-- > 0;) {
        a[i] = static_cast<std::int64_t>(index % d);
        index /= d;
    }
    std::int64_t phase = 0;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            if (i < j) {
                phase += static_cast<std::int64_t>(l.matrix().code(i, j)) * a[i] * a[j];
            }
        }
    }
    return std::exp(std::complex<double>(0, 2 * std::numbers::pi * static_cast<double>(phase) / d)) /
           std::pow(static_cast<double>(d), static_cast<double>(k) / 2);
}

/// ρ_A by explicit summation over traced indices.
std::vector<std::complex<double>> oracle_rho(const StateVector &psi, const std::vector<std::size_t> &keep) {
    std::size_t k = psi.sites, d = psi.dimension;
    std::size_t dim = 1;
    for (std::size_t i = 0; i < keep.size(); ++i) {
        dim *= d;
    }
    std::vector<std::complex<double>> rho(dim * dim);
    auto digits = [&](std::size_t idx) {
        std::vector<std::size_t> a(k);
        for (std::size_t i = k; i-- > 0;) {
            a[i] = idx % d;
            idx /= d;
        }
        return a;
    };
    for (std::size_t x = 0; x < psi.amplitudes.size(); ++x) {
        for (std::size_t y = 0; y < psi.amplitudes.size(); ++y) {
            auto ax = digits(x), ay = digits(y);
            bool same_rest = true;
            for (std::size_t s = 0; s < k; ++s) {
                bool kept = std::find(keep.begin(), keep.end(), s + 1) != keep.end();
                if (!kept && ax[s] != ay[s]) {
                    same_rest = false;
                }
            }
            if (!same_rest) {
                continue;
            }
            std::size_t r = 0, c = 0;
            for (auto s : keep) {
                r = r * d + ax[s - 1];
                c = c * d + ay[s - 1];
            }
            rho[r * dim + c] += psi.amplitudes[x] * std::conj(psi.amplitudes[y]);
        }
    }
    return rho;
}

}  // namespace

TEST(Incidence, BlockMatrixLayout) {
    auto l = block_incidence(example2());
    EXPECT_EQ(l.sites(), 6u);
    for (std::size_t i = 1; i <= 3; ++i) {
        for (std::size_t j = 1; j <= 3; ++j) {
            EXPECT_EQ(l.weight(i, j), 0u);
            EXPECT_EQ(l.weight(i + 3, j + 3), 0u);
            EXPECT_EQ(l.weight(i + 3, j), example2().code(i - 1, j - 1));
            EXPECT_EQ(l.weight(i, j + 3), example2().code(j - 1, i - 1));
        }
    }
}

TEST(Incidence, RejectsInvalidMatrices) {
    Field f(5);
    EXPECT_THROW(IncidenceMatrix(Matrix::from_rows(f, {{0, 1}, {2, 0}})), DimensionError);
    EXPECT_THROW(IncidenceMatrix(Matrix::from_rows(f, {{1, 1}, {1, 0}})), DimensionError);
    EXPECT_THROW(IncidenceMatrix(Matrix::from_rows(f, {{0, 1, 1}, {1, 0, 1}})), DimensionError);
    EXPECT_THROW(IncidenceMatrix(Matrix::zeros(Field(2, 2), 2, 2)), FieldError);
    EXPECT_THROW(block_incidence(Matrix::identity(Field(2, 2), 3)), FieldError);
}

TEST(Property1, Example2BlockMatrix) {
    auto l = block_incidence(example2());
    EXPECT_TRUE(property1_check(l));
    EXPECT_EQ(gate_count(l), 9u);
    EXPECT_FALSE(lower_bound_witness(l));
}

TEST(Property1, HoldsForEverySuperregularGf5Matrix) {
    Field f(5);
    std::vector<Code> codes(9);
    std::size_t seen = 0;
    for (std::uint32_t n = 0; n < 1953125; ++n) {
        std::uint32_t rest = n;
        for (int i = 8; i >= 0; --i) {
            codes[i] = rest % 5;
            rest /= 5;
        }
        if (std::find(codes.begin(), codes.end(), 0u) != codes.end()) {
            continue;
        }
        Matrix g(f, 3, 3, codes);
        bool sr = all_minors_nonzero(g);
        seen += sr;
        ASSERT_EQ(property1_check(block_incidence(g)), sr) << g.to_string();
    }
    EXPECT_EQ(seen, 6144u);
}

TEST(Property1, ViolationIsAVanishingMinor) {
    std::mt19937 rng(51);
    Field f(3);
    auto o = oracle::prime(3);
    for (int t = 0; t < 100; ++t) {
        auto m = random_matrix(rng, f, 4, 4);
        auto sym = Matrix::generate(f, 4, 4, [&](std::size_t i, std::size_t j) -> Code {
            return i == j ? 0 : m.code(std::min(i, j), std::max(i, j));
        });
        IncidenceMatrix l(sym);
        auto rows = testing_util::rows_of(sym);
        bool expect = true;
        for (const auto &a : oracle::subsets(4, 2)) {
            std::uint32_t am = (1u << a[0]) | (1u << a[1]);
            if (oracle::det(o, oracle::pick(rows, am, 0xF ^ am)) == 0) {
                expect = false;
            }
        }
        ASSERT_EQ(property1_check(l), expect);
        if (auto v = property1_violation(l)) {
            auto minor = sym.submatrix(v->rows, v->cols);
            EXPECT_EQ(det(minor), 0u);
        }
    }
}

TEST(Property1, DrawnGraphs) {
    auto square = IncidenceMatrix::from_edges(Field(3), 4, {{1, 2, 1}, {2, 3, 1}, {3, 4, 1}, {4, 1, 2}});
    EXPECT_TRUE(property1_check(square));
    EXPECT_EQ(gate_count(square), 4u);

    auto chords = hexagon_cycle();
    chords.insert(chords.end(), {{1, 4, 1}, {2, 6, 1}, {3, 5, 1}});
    auto hex = IncidenceMatrix::from_edges(Field(2), 6, chords);
    EXPECT_TRUE(property1_check(hex));
    EXPECT_EQ(gate_count(hex), 9u);

    Edges spokes;
    for (std::int64_t i = 2; i <= 6; ++i) {
        spokes.push_back({1, i, 1});
        spokes.push_back({i, i == 6 ? 2 : i + 1, 1});
    }
    auto wheel = IncidenceMatrix::from_edges(Field(2), 6, spokes);
    EXPECT_TRUE(property1_check(wheel));
    EXPECT_EQ(gate_count(wheel), 10u);
}

// The hexagon with both inscribed triangles has twelve unit edges, and over
// GF(2) it does not satisfy Property 1: across the cut {1,3,5} | {2,4,6}
// only the cycle edges remain, and their 3x3 block is singular mod 2.
TEST(Property1, HexagonWithTrianglesFails) {
    auto edges = hexagon_cycle();
    edges.insert(edges.end(), {{1, 3, 1}, {3, 5, 1}, {5, 1, 1}, {2, 4, 1}, {4, 6, 1}, {6, 2, 1}});
    auto l = IncidenceMatrix::from_edges(Field(2), 6, edges);
    EXPECT_EQ(gate_count(l), 12u);
    EXPECT_FALSE(property1_check(l));
    std::vector<std::size_t> odd{0, 2, 4}, even{1, 3, 5};
    EXPECT_EQ(det(l.matrix().submatrix(odd, even)), 0u);
}

TEST(Property1, FewGatesGiveWitness) {
    EXPECT_EQ(min_gate_bound(6), 9u);
    EXPECT_EQ(min_gate_bound(8), 16u);
    std::mt19937 rng(52);
    Field f(5);
    for (int t = 0; t < 200; ++t) {
        std::vector<Code> w(36, 0);
        for (int e = 0; e < 8; ++e) {
            std::size_t i = rng() % 6, j = rng() % 6;
            if (i != j) {
                w[i * 6 + j] = w[j * 6 + i] = 1 + rng() % 4;
            }
        }
        IncidenceMatrix l(Matrix(f, 6, 6, w));
        ASSERT_LT(gate_count(l), min_gate_bound(6));
        auto witness = lower_bound_witness(l);
        ASSERT_TRUE(witness);
        EXPECT_EQ(det(l.matrix().submatrix(witness->minor.rows, witness->minor.cols)), 0u);
        EXPECT_FALSE(property1_check(l));
    }
}

TEST(Circuits, GateCounts) {
    auto d6 = factor_forward(example2());
    auto tn6 = tensor_network_circuit(d6);
    EXPECT_EQ(tn6.size(), 6u);
    EXPECT_EQ(graph_state_circuit(block_incidence(example2())).size(), 9u);
    auto g8 = Matrix::from_rows(Field(7), {{1, 1, 1, 1}, {1, 2, 3, 5}, {1, 3, 2, 6}, {1, 6, 5, 4}});
    auto tn8 = tensor_network_circuit(factor8(g8));
    EXPECT_EQ(tn8.size(), 10u);
    EXPECT_EQ(tn8.effective_size(), 10u);
    EXPECT_EQ(graph_state_circuit(block_incidence(g8)).size(), 16u);
}

TEST(Circuits, TensorNetworkLayout) {
    auto plan = tensor_network_circuit(factor_forward(example2()));
    EXPECT_EQ(plan.dimension, 5u);
    EXPECT_EQ(plan.sites, 6u);
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_EQ(plan.gates[i].kind, GateKind::bell_pair);
        EXPECT_EQ(plan.gates[i].sites, (std::array<std::size_t, 2>{i + 1, i + 4}));
    }
    EXPECT_EQ(plan.gates[3].name, "A");
    EXPECT_EQ(plan.gates[3].sites, (std::array<std::size_t, 2>{1, 2}));
    EXPECT_EQ(plan.gates[5].name, "C");
    auto back = tensor_network_circuit(factor_backward(example2()));
    EXPECT_EQ(back.gates[3].name, "C");
    EXPECT_EQ(back.gates[3].sites, (std::array<std::size_t, 2>{2, 3}));
    EXPECT_EQ(*back.gates[3].matrix, reversed(factor_backward(example2()).c));
}

TEST(Circuits, IdentityGateIsDroppable) {
    auto g = Matrix::from_rows(Field(7), {{1, 1, 1, 1}, {1, 3, 4, 5}, {1, 4, 5, 3}, {1, 5, 3, 4}});
    auto plan = tensor_network_circuit(factor8(g));
    EXPECT_EQ(plan.size(), 10u);
    EXPECT_EQ(plan.effective_size(), 9u);
}

TEST(Circuits, RejectsUnverifiedDecomposition) {
    auto d = factor_forward(example2());
    d.a = d.a.with_entry(0, 1, 2);
    EXPECT_THROW(tensor_network_circuit(d), UnverifiedDecompositionError);
}

TEST(States, GraphStateAmplitudes) {
    auto l = block_incidence(example2());
    auto psi = build_graph_state(l);
    ASSERT_EQ(psi.amplitudes.size(), 15625u);
    for (std::size_t i = 0; i < psi.amplitudes.size(); i += 37) {
        EXPECT_LT(std::abs(psi.amplitudes[i] - oracle_amplitude(l, i)), 1e-12);
    }
    EXPECT_NEAR(psi.norm(), 1.0, 1e-12);
    EXPECT_EQ(psi.support(), 15625u);
}

TEST(States, GraphStateIsUniform) {
    auto psi = build_graph_state(block_incidence(example2()));
    auto report = uniformity_check(psi, 1e-10);
    EXPECT_EQ(report.entries.size(), 10u);
    EXPECT_TRUE(report.all_pass());
    EXPECT_LT(report.max_deviation(), 1e-10);
}

TEST(States, ReducedDensityMatchesOracle) {
    auto l = IncidenceMatrix::from_edges(Field(3), 4, {{1, 2, 1}, {2, 3, 1}, {3, 4, 1}, {4, 1, 2}});
    auto psi = build_graph_state(l);
    for (std::vector<std::size_t> keep : {std::vector<std::size_t>{1, 2}, {1, 3}, {2, 4}, {3}, {1, 2, 4}}) {
        auto rho = reduced_density_matrix(psi, keep);
        auto expect = oracle_rho(psi, keep);
        ASSERT_EQ(rho.size(), expect.size());
        for (std::size_t i = 0; i < rho.size(); ++i) {
            EXPECT_LT(std::abs(rho[i] - expect[i]), 1e-12);
        }
    }
    EXPECT_TRUE(uniformity_check(psi).all_pass());
}

TEST(States, ProductStateFails) {
    StateVector psi{3, 4, std::vector<Amplitude>(81, 0.0)};
    psi.amplitudes[0] = 1.0;
    auto report = uniformity_check(psi);
    EXPECT_EQ(report.entries.size(), 3u);
    for (const auto &e : report.entries) {
        EXPECT_FALSE(e.pass);
        EXPECT_NEAR(e.deviation, 1.0 - 1.0 / 9.0, 1e-12);
    }
}

TEST(States, BellPairPasses) {
    StateVector psi{2, 2, {1 / std::sqrt(2.0), 0, 0, 1 / std::sqrt(2.0)}};
    auto report = uniformity_check(psi);
    ASSERT_EQ(report.entries.size(), 1u);
    EXPECT_TRUE(report.all_pass());
}

TEST(States, UnnormalizedRejected) {
    StateVector psi{2, 2, {1, 0, 0, 1}};
    EXPECT_THROW(uniformity_check(psi), UnnormalizedStateError);
}

TEST(States, SizeCap) {
    EXPECT_THROW(build_graph_state(block_incidence(Matrix::identity(Field(11), 4)), 1000), StateTooLargeError);
}

TEST(Fourier, InverseUndoes) {
    auto psi = build_graph_state(IncidenceMatrix::from_edges(Field(3), 4, {{1, 2, 1}, {3, 4, 2}}));
    auto there = fourier_rotate(psi, {2, 3});
    auto back = fourier_rotate(there, {2, 3}, true);
    for (std::size_t i = 0; i < psi.amplitudes.size(); ++i) {
        EXPECT_LT(std::abs(back.amplitudes[i] - psi.amplitudes[i]), 1e-12);
    }
    EXPECT_THROW(fourier_rotate(StateVector{4, 1, std::vector<Amplitude>(4)}, {1}), FieldError);
    EXPECT_THROW(fourier_rotate(psi, {5}), DimensionError);
}

TEST(Fourier, SingleSiteUniformSuperposition) {
    StateVector zero{5, 1, {1, 0, 0, 0, 0}};
    auto plus = fourier_rotate(zero, {1});
    for (auto a : plus.amplitudes) {
        EXPECT_LT(std::abs(a - 1 / std::sqrt(5.0)), 1e-12);
    }
}

TEST(Fourier, MinimalSupportMapsToGraphState) {
    auto g = example2();
    auto ms = minimal_support_state(g);
    EXPECT_EQ(ms.support(), 125u);
    auto rotated = fourier_rotate(ms, {4, 5, 6});
    auto graph = build_graph_state(block_incidence(g));
    EXPECT_GT(overlap_modulus(rotated, graph), 1 - 1e-10);
    // Same state up to a global phase: fix the phase on amplitude 0.
    Amplitude phase = rotated.amplitudes[0] / graph.amplitudes[0];
    double worst = 0;
    for (std::size_t i = 0; i < graph.amplitudes.size(); ++i) {
        worst = std::max(worst, std::abs(rotated.amplitudes[i] - phase * graph.amplitudes[i]));
    }
    EXPECT_LT(worst, 1e-10);
}

// Uniformity of the minimal-support state agrees with the array strength.
TEST(Uniformity, MatchesArrayStrength) {
    std::mt19937 rng(53);
    Field f(5);
    int ame = 0, total = 0;
    while (total < 40) {
        auto g = total % 2 ? random_superregular(rng, f, 3) : random_matrix(rng, f, 3, 3);
        if (det(g) == 0) {
            continue;
        }
        ++total;
        bool uniform = uniformity_check(minimal_support_state(g)).all_pass();
        bool full = strength(array_from_matrix(g)) == 3;
        EXPECT_EQ(uniform, full);
        ame += full;
    }
    EXPECT_GT(ame, 10);
}
