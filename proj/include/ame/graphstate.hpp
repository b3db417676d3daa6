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

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "ame/factor6.hpp"
#include "ame/factor8.hpp"
#include "ame/matrix.hpp"
#include "ame/oa.hpp"

namespace ame {

/// Symmetric weight matrix of a qudit graph state over a prime field, zero diagonal.
class IncidenceMatrix {
   public:
    explicit IncidenceMatrix(Matrix weights) : weights_(std::move(weights)) {
        if (!weights_.field().is_prime_field()) {
            throw FieldError("graph states need a prime local dimension");
        }
        if (!weights_.is_square()) {
            throw DimensionError("incidence matrix must be square");
        }
        for (std::size_t i = 0; i < sites(); ++i) {
            if (weights_.code(i, i) != 0) {
                throw DimensionError("incidence matrix must have a zero diagonal");
            }
            for (std::size_t j = 0; j < i; ++j) {
                if (weights_.code(i, j) != weights_.code(j, i)) {
                    throw DimensionError("incidence matrix must be symmetric");
                }
            }
        }
    }

    /// Edge list with 1-based sites; weight taken mod D.
    static IncidenceMatrix from_edges(const Field &f, std::size_t k,
                                      const std::vector<std::array<std::int64_t, 3>> &edges) {
        std::vector<Code> codes(k * k, 0);
        for (const auto &[i, j, w] : edges) {
            auto a = static_cast<std::size_t>(i - 1), b = static_cast<std::size_t>(j - 1);
            codes.at(a * k + b) = codes.at(b * k + a) = f.from_integer(w);
        }
        return IncidenceMatrix(Matrix(f, k, k, std::move(codes)));
    }

    std::size_t sites() const {
        return weights_.rows();
    }
    std::uint32_t dimension() const {
        return weights_.field().order();
    }
    /// 1-based.
    Code weight(std::size_t i, std::size_t j) const {
        return weights_.code(i - 1, j - 1);
    }
    const Matrix &matrix() const {
        return weights_;
    }

   private:
    Matrix weights_;
};

/// L = [[0, Gᵀ], [G, 0]].
inline IncidenceMatrix block_incidence(const Matrix &g) {
    if (!g.field().is_prime_field()) {
        throw FieldError("block incidence matrix needs a prime field");
    }
    if (!g.is_square()) {
        throw DimensionError("block incidence matrix needs a square G");
    }
    std::size_t m = g.rows();
    return IncidenceMatrix(Matrix::generate(g.field(), 2 * m, 2 * m, [&](std::size_t i, std::size_t j) -> Code {
        if (i < m && j >= m) {
            return g.code(j - m, i);
        }
        if (i >= m && j < m) {
            return g.code(i - m, j);
        }
        return 0;
    }));
}

/// First balanced bipartition whose rows(A) × cols(B) minor vanishes.
inline std::optional<MinorIndex> property1_violation(const IncidenceMatrix &l) {
    std::size_t k = l.sites();
    if (k % 2 != 0) {
        throw DimensionError("Property 1 needs an even number of sites");
    }
    auto side = detail::first_combination(k / 2);
    do {
        std::vector<std::size_t> rest;
        for (std::size_t s = 0; s < k; ++s) {
            if (!std::binary_search(side.begin(), side.end(), s)) {
                rest.push_back(s);
            }
        }
        if (detail::minor_det(l.matrix().field(), l.matrix().codes(), k, side, rest) == 0) {
            return MinorIndex{side, rest};
        }
    } while (detail::next_combination(side, k));
    return std::nullopt;
}

inline bool property1_check(const IncidenceMatrix &l) {
    return !property1_violation(l).has_value();
}

/// Number of nonzero weights above the diagonal; each power Z^l is one gate.
inline std::size_t gate_count(const IncidenceMatrix &l) {
    std::size_t count = 0;
    for (std::size_t i = 1; i <= l.sites(); ++i) {
        for (std::size_t j = i + 1; j <= l.sites(); ++j) {
            count += l.weight(i, j) != 0;
        }
    }
    return count;
}

inline std::size_t min_gate_bound(std::size_t k) {
    return (k / 2) * (k / 2);
}

/// A column with at least k/2 off-diagonal zeros forces a vanishing balanced minor.
struct LowerBoundWitness {
    std::size_t column = 0;  // 1-based
    MinorIndex minor;        // rows A (all zero in `column`), cols B ∋ column; 0-based
};

inline std::optional<LowerBoundWitness> lower_bound_witness(const IncidenceMatrix &l) {
    std::size_t k = l.sites();
    if (k % 2 != 0) {
        throw DimensionError("lower bound witness needs an even number of sites");
    }
    for (std::size_t col = 0; col < k; ++col) {
        std::vector<std::size_t> zero_rows;
        for (std::size_t r = 0; r < k; ++r) {
            if (r != col && l.matrix().code(r, col) == 0) {
                zero_rows.push_back(r);
            }
        }
        if (zero_rows.size() < k / 2) {
            continue;
        }
        zero_rows.resize(k / 2);
        std::vector<std::size_t> rest;
        for (std::size_t s = 0; s < k; ++s) {
            if (!std::binary_search(zero_rows.begin(), zero_rows.end(), s)) {
                rest.push_back(s);
            }
        }
        return LowerBoundWitness{col + 1, MinorIndex{zero_rows, rest}};
    }
    return std::nullopt;
}

enum class GateKind { bell_pair, two_site, controlled_z };

inline const char *gate_kind_name(GateKind k) {
    switch (k) {
        case GateKind::bell_pair:
            return "bell_pair";
        case GateKind::two_site:
            return "two_site";
        case GateKind::controlled_z:
            break;
    }
    return "controlled_z";
}

struct CircuitGate {
    GateKind kind = GateKind::two_site;
    std::array<std::size_t, 2> sites{1, 2};  // 1-based
    std::string name;
    std::optional<Matrix> matrix;             // two_site only
    std::optional<std::uint32_t> power;       // controlled_z only

    /// An identity two-site gate can be dropped from the plan.
    bool droppable() const {
        return kind == GateKind::two_site && matrix && *matrix == Matrix::identity(matrix->field(), 2);
    }
};

/// Ordered gate list; application order is list order.
struct CircuitPlan {
    std::uint32_t dimension = 0;
    std::size_t sites = 0;
    std::optional<Field> field;
    std::vector<CircuitGate> gates;

    std::size_t size() const {
        return gates.size();
    }
    std::size_t effective_size() const {
        return static_cast<std::size_t>(
            std::count_if(gates.begin(), gates.end(), [](const CircuitGate &g) { return !g.droppable(); }));
    }
};

struct UnverifiedDecompositionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Bell pairs K(1,4), K(2,5), K(3,6), then the three gates in application order.
inline CircuitPlan tensor_network_circuit(const Decomposition6 &d) {
    if (!verify(d)) {
        throw UnverifiedDecompositionError("decomposition does not reproduce its source matrix");
    }
    const Field &f = d.source.field();
    CircuitPlan plan{f.order(), 6, f, {}};
    for (std::size_t i = 1; i <= 3; ++i) {
        plan.gates.push_back({GateKind::bell_pair, {i, i + 3}, "K", std::nullopt, std::nullopt});
    }
    if (d.direction == Direction::forward) {
        plan.gates.push_back({GateKind::two_site, {1, 2}, "A", d.a, std::nullopt});
        plan.gates.push_back({GateKind::two_site, {1, 3}, "B", d.b, std::nullopt});
        plan.gates.push_back({GateKind::two_site, {2, 3}, "C", d.c, std::nullopt});
    } else {
        plan.gates.push_back({GateKind::two_site, {2, 3}, "C", reversed(d.c), std::nullopt});
        plan.gates.push_back({GateKind::two_site, {1, 3}, "B", reversed(d.b), std::nullopt});
        plan.gates.push_back({GateKind::two_site, {1, 2}, "A", reversed(d.a), std::nullopt});
    }
    return plan;
}

/// Bell pairs K(i, i+4), then A12, A13, A14, A23, A24, A34.
inline CircuitPlan tensor_network_circuit(const Decomposition8 &d) {
    if (!verify8(d)) {
        throw UnverifiedDecompositionError("decomposition does not reproduce its source matrix");
    }
    const Field &f = d.source.field();
    CircuitPlan plan{f.order(), 8, f, {}};
    for (std::size_t i = 1; i <= 4; ++i) {
        plan.gates.push_back({GateKind::bell_pair, {i, i + 4}, "K", std::nullopt, std::nullopt});
    }
    for (std::size_t i = 0; i < gate_pairs8.size(); ++i) {
        const auto &p = gate_pairs8[i];
        plan.gates.push_back({GateKind::two_site, {p.j, p.k}, "A" + p.key(), d.gates[i], std::nullopt});
    }
    return plan;
}

/// One controlled-Z power per nonzero weight.
inline CircuitPlan graph_state_circuit(const IncidenceMatrix &l) {
    CircuitPlan plan{l.dimension(), l.sites(), l.matrix().field(), {}};
    for (std::size_t i = 1; i <= l.sites(); ++i) {
        for (std::size_t j = i + 1; j <= l.sites(); ++j) {
            if (auto w = l.weight(i, j)) {
                plan.gates.push_back({GateKind::controlled_z, {i, j}, "Z", std::nullopt, w});
            }
        }
    }
    return plan;
}

using Amplitude = std::complex<double>;

/// Pure state of k qudits of dimension D; site 1 is the most significant digit.
struct StateVector {
    std::uint32_t dimension = 0;
    std::size_t sites = 0;
    std::vector<Amplitude> amplitudes;

    double norm() const {
        double s = 0;
        for (const auto &a : amplitudes) {
            s += std::norm(a);
        }
        return std::sqrt(s);
    }
    std::size_t support() const {
        return static_cast<std::size_t>(std::count_if(amplitudes.begin(), amplitudes.end(),
                                                      [](const Amplitude &a) { return std::abs(a) > 1e-12; }));
    }
};

struct StateTooLargeError : std::length_error {
    using std::length_error::length_error;
};

inline constexpr std::size_t default_amplitude_cap = 10'000'000;

inline std::size_t checked_state_size(std::uint32_t d, std::size_t k, std::size_t cap) {
    std::size_t n = 1;
    for (std::size_t i = 0; i < k; ++i) {
        if (n > cap / d) {
            throw StateTooLargeError("state with " + std::to_string(d) + "^" + std::to_string(k) +
                                     " amplitudes exceeds the cap of " + std::to_string(cap));
        }
        n *= d;
    }
    return n;
}

/// amplitude(a) = D^(-k/2) · ω^(Σ_{i<j} ℓ_ij a_i a_j), ω = exp(2πi/D).
inline StateVector build_graph_state(const IncidenceMatrix &l, std::size_t cap = default_amplitude_cap) {
    std::uint32_t d = l.dimension();
    std::size_t k = l.sites();
    std::size_t n = checked_state_size(d, k, cap);
    StateVector out{d, k, std::vector<Amplitude>(n)};
    double scale = std::pow(static_cast<double>(d), -static_cast<double>(k) / 2.0);
    std::vector<Amplitude> roots(d);
    for (std::uint32_t t = 0; t < d; ++t) {
        roots[t] = std::polar(1.0, 2.0 * std::numbers::pi * t / d);
    }
    for (std::size_t idx = 0; idx < n; ++idx) {
        auto a = decode_tuple(idx, d, k);
        std::uint64_t phase = 0;
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = i + 1; j < k; ++j) {
                phase += std::uint64_t{l.weight(i + 1, j + 1)} * a[i] * a[j];
            }
        }
        out.amplitudes[idx] = scale * roots[phase % d];
    }
    return out;
}

/// D^(-k/4) Σ_a |a, G·a> for the classical linear map of G.
inline StateVector minimal_support_state(const Matrix &g, std::size_t cap = default_amplitude_cap) {
    ClassicalMap u = map_from_matrix(g);
    std::size_t m = u.arity;
    std::uint32_t d = u.symbols;
    std::size_t n = checked_state_size(d, 2 * m, cap);
    StateVector out{d, 2 * m, std::vector<Amplitude>(n)};
    double amp = std::pow(static_cast<double>(d), -static_cast<double>(m) / 2.0);
    std::size_t half = u.table.size();
    for (std::size_t in = 0; in < half; ++in) {
        out.amplitudes[in * half + u.table[in]] = amp;
    }
    return out;
}

/// Applies F (F_ab = ω^(ab)/√D) to each listed site (1-based). With
/// `inverse`, applies F† instead.
inline StateVector fourier_rotate(const StateVector &psi, const std::vector<std::size_t> &sites, bool inverse = false) {
    std::uint32_t d = psi.dimension;
    if (!detail::is_prime(d)) {
        throw FieldError("Fourier rotation needs a prime local dimension");
    }
    std::vector<Amplitude> f(std::size_t{d} * d);
    double norm = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::uint32_t a = 0; a < d; ++a) {
        for (std::uint32_t b = 0; b < d; ++b) {
            double angle = 2.0 * std::numbers::pi * ((std::uint64_t{a} * b) % d) / d;
            f[a * d + b] = std::polar(norm, inverse ? -angle : angle);
        }
    }
    StateVector out = psi;
    std::vector<Amplitude> scratch(d);
    for (std::size_t site : sites) {
        if (site < 1 || site > psi.sites) {
            throw DimensionError("site " + std::to_string(site) + " out of range");
        }
        std::size_t stride = int_pow(d, psi.sites - site);
        std::size_t block = stride * d;
        for (std::size_t base = 0; base < out.amplitudes.size(); base += block) {
            for (std::size_t off = 0; off < stride; ++off) {
                for (std::uint32_t a = 0; a < d; ++a) {
                    Amplitude acc = 0;
                    for (std::uint32_t b = 0; b < d; ++b) {
                        acc += f[a * d + b] * out.amplitudes[base + off + b * stride];
                    }
                    scratch[a] = acc;
                }
                for (std::uint32_t a = 0; a < d; ++a) {
                    out.amplitudes[base + off + a * stride] = scratch[a];
                }
            }
        }
    }
    return out;
}

/// |<a|b>|, which ignores a global phase.
inline double overlap_modulus(const StateVector &a, const StateVector &b) {
    if (a.amplitudes.size() != b.amplitudes.size()) {
        throw DimensionError("states have different sizes");
    }
    Amplitude acc = 0;
    for (std::size_t i = 0; i < a.amplitudes.size(); ++i) {
        acc += std::conj(a.amplitudes[i]) * b.amplitudes[i];
    }
    return std::abs(acc);
}

/// Reduced density matrix on `keep` (1-based sites, any order is normalized).
inline std::vector<Amplitude> reduced_density_matrix(const StateVector &psi, std::vector<std::size_t> keep) {
    std::sort(keep.begin(), keep.end());
    std::uint32_t d = psi.dimension;
    std::size_t k = psi.sites;
    std::vector<std::size_t> traced;
    for (std::size_t s = 1; s <= k; ++s) {
        if (!std::binary_search(keep.begin(), keep.end(), s)) {
            traced.push_back(s);
        }
    }
    std::size_t dim_keep = int_pow(d, keep.size()), dim_trace = int_pow(d, traced.size());
    // Gather amplitudes into a dim_keep × dim_trace matrix, then ρ = M·M†.
    std::vector<Amplitude> m(dim_keep * dim_trace);
    std::vector<std::size_t> place(k);  // stride of each site inside its half
    for (std::size_t i = 0; i < keep.size(); ++i) {
        place[keep[i] - 1] = int_pow(d, keep.size() - 1 - i);
    }
    for (std::size_t i = 0; i < traced.size(); ++i) {
        place[traced[i] - 1] = int_pow(d, traced.size() - 1 - i);
    }
    for (std::size_t idx = 0; idx < psi.amplitudes.size(); ++idx) {
        std::size_t rest = idx, row = 0, col = 0;
        for (std::size_t s = k; s-- > 0;) {
            std::size_t digit = rest % d;
            rest /= d;
            if (std::binary_search(keep.begin(), keep.end(), s + 1)) {
                row += digit * place[s];
            } else {
                col += digit * place[s];
            }
        }
        m[row * dim_trace + col] = psi.amplitudes[idx];
    }
    std::vector<Amplitude> rho(dim_keep * dim_keep);
    for (std::size_t i = 0; i < dim_keep; ++i) {
        for (std::size_t j = i; j < dim_keep; ++j) {
            Amplitude acc = 0;
            for (std::size_t t = 0; t < dim_trace; ++t) {
                acc += m[i * dim_trace + t] * std::conj(m[j * dim_trace + t]);
            }
            rho[i * dim_keep + j] = acc;
            rho[j * dim_keep + i] = std::conj(acc);
        }
    }
    return rho;
}

struct UniformityEntry {
    std::vector<std::size_t> side;  // 1-based, contains site 1
    double deviation = 0;           // max |ρ - I/D^(k/2)|
    bool pass = false;
};

struct UniformityReport {
    double tolerance = 0;
    std::vector<UniformityEntry> entries;

    bool all_pass() const {
        return std::all_of(entries.begin(), entries.end(), [](const auto &e) { return e.pass; });
    }
    double max_deviation() const {
        double m = 0;
        for (const auto &e : entries) {
            m = std::max(m, e.deviation);
        }
        return m;
    }
};

struct UnnormalizedStateError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Every balanced bipartition (side containing site 1) compared to the maximally mixed state.
inline UniformityReport uniformity_check(const StateVector &psi, double tolerance = 1e-9) {
    if (std::abs(psi.norm() - 1.0) > tolerance) {
        throw UnnormalizedStateError("state norm deviates from 1 by more than the tolerance");
    }
    std::size_t k = psi.sites;
    std::size_t half = k / 2;
    UniformityReport report{tolerance, {}};
    auto side = detail::first_combination(half);
    double target = std::pow(static_cast<double>(psi.dimension), -static_cast<double>(half));
    do {
        if (side.front() != 0) {
            break;
        }
        std::vector<std::size_t> sites;
        for (auto s : side) {
            sites.push_back(s + 1);
        }
        auto rho = reduced_density_matrix(psi, sites);
        std::size_t dim = int_pow(psi.dimension, half);
        double dev = 0;
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t j = 0; j < dim; ++j) {
                dev = std::max(dev, std::abs(rho[i * dim + j] - (i == j ? target : 0.0)));
            }
        }
        report.entries.push_back({sites, dev, dev <= tolerance});
    } while (detail::next_combination(side, k));
    return report;
}

}  // namespace ame
