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
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ame/matrix.hpp"

namespace ame {

/// A map X^m -> X^m stored as a lookup table. Tuples are mixed-radix codes with
/// the first coordinate most significant.
struct ClassicalMap {
    std::uint32_t symbols = 0;
    std::uint32_t arity = 0;
    std::vector<std::uint32_t> table;

    std::size_t size() const {
        return table.size();
    }
};

inline std::size_t int_pow(std::size_t base, std::size_t e) {
    std::size_t out = 1;
    while (e--) {
        out *= base;
    }
    return out;
}

inline std::vector<std::uint32_t> decode_tuple(std::size_t code, std::uint32_t symbols, std::size_t len) {
    std::vector<std::uint32_t> out(len);
    for (std::size_t i = len; i-- > 0;) {
        out[i] = static_cast<std::uint32_t>(code % symbols);
        code /= symbols;
    }
    return out;
}

inline std::size_t encode_tuple(std::span<const std::uint32_t> tuple, std::uint32_t symbols) {
    std::size_t code = 0;
    for (auto v : tuple) {
        code = code * symbols + v;
    }
    return code;
}

inline bool is_bijective(const ClassicalMap &u) {
    std::vector<bool> hit(u.table.size(), false);
    for (auto out : u.table) {
        if (out >= hit.size() || hit[out]) {
            return false;
        }
        hit[out] = true;
    }
    return true;
}

/// b = G·a over the field of G.
inline ClassicalMap map_from_matrix(const Matrix &g) {
    if (!g.is_square()) {
        throw DimensionError("classical map needs a square matrix");
    }
    if (det(g) == 0) {
        throw SingularMatrixError("classical map from a singular matrix is not bijective");
    }
    const Field &f = g.field();
    std::uint32_t q = f.order();
    std::size_t m = g.rows();
    ClassicalMap u{q, static_cast<std::uint32_t>(m), std::vector<std::uint32_t>(int_pow(q, m))};
    std::vector<Code> b(m);
    for (std::size_t in = 0; in < u.table.size(); ++in) {
        auto a = decode_tuple(in, q, m);
        for (std::size_t i = 0; i < m; ++i) {
            Code acc = 0;
            for (std::size_t j = 0; j < m; ++j) {
                acc = f.add(acc, f.mul(g.code(i, j), a[j]));
            }
            b[i] = acc;
        }
        u.table[in] = static_cast<std::uint32_t>(encode_tuple(b, q));
    }
    return u;
}

/// Symbol array with a fixed number of columns, rows stored flat.
class OrthogonalArray {
   public:
    OrthogonalArray(std::uint32_t symbols, std::size_t columns, std::vector<std::uint32_t> data,
                    std::optional<std::size_t> declared_strength = std::nullopt)
        : symbols_(symbols), columns_(columns), data_(std::move(data)), declared_strength_(declared_strength) {
        if (symbols_ < 2 || columns_ == 0) {
            throw DimensionError("orthogonal array needs >= 2 symbols and >= 1 column");
        }
        if (data_.size() % columns_ != 0) {
            throw DimensionError("array data is not a whole number of rows");
        }
        for (auto v : data_) {
            if (v >= symbols_) {
                throw DimensionError("symbol " + std::to_string(v) + " out of range");
            }
        }
    }

    std::uint32_t symbols() const {
        return symbols_;
    }
    std::size_t columns() const {
        return columns_;
    }
    std::size_t rows() const {
        return data_.size() / columns_;
    }
    std::uint32_t at(std::size_t row, std::size_t col) const {
        return data_[row * columns_ + col];
    }
    std::span<const std::uint32_t> row(std::size_t r) const {
        return std::span<const std::uint32_t>(data_).subspan(r * columns_, columns_);
    }
    std::span<const std::uint32_t> data() const {
        return data_;
    }
    std::optional<std::size_t> declared_strength() const {
        return declared_strength_;
    }
    OrthogonalArray with_declared_strength(std::optional<std::size_t> s) const {
        return OrthogonalArray(symbols_, columns_, data_, s);
    }

   private:
    std::uint32_t symbols_;
    std::size_t columns_;
    std::vector<std::uint32_t> data_;
    std::optional<std::size_t> declared_strength_;
};

/// Rows (a_1..a_m, b_1..b_m) for every input in ascending mixed-radix order.
inline OrthogonalArray array_from_map(const ClassicalMap &u) {
    if (!is_bijective(u)) {
        throw std::invalid_argument("classical map is not bijective");
    }
    std::size_t m = u.arity;
    std::vector<std::uint32_t> data;
    data.reserve(u.table.size() * 2 * m);
    for (std::size_t in = 0; in < u.table.size(); ++in) {
        auto a = decode_tuple(in, u.symbols, m);
        auto b = decode_tuple(u.table[in], u.symbols, m);
        data.insert(data.end(), a.begin(), a.end());
        data.insert(data.end(), b.begin(), b.end());
    }
    return OrthogonalArray(u.symbols, 2 * m, std::move(data), m);
}

inline OrthogonalArray array_from_matrix(const Matrix &g) {
    return array_from_map(map_from_matrix(g));
}

/// Every tuple over `cols` (0-based) occurs exactly rows/D^|cols| times.
inline bool subset_orthogonal(const OrthogonalArray &arr, std::span<const std::size_t> cols) {
    for (auto c : cols) {
        if (c >= arr.columns()) {
            throw DimensionError("column index " + std::to_string(c) + " out of range");
        }
    }
    std::size_t cells = int_pow(arr.symbols(), cols.size());
    if (cells > arr.rows() || arr.rows() % cells != 0) {
        return false;
    }
    std::size_t index = arr.rows() / cells;
    std::vector<std::uint32_t> counts(cells, 0);
    for (std::size_t r = 0; r < arr.rows(); ++r) {
        std::size_t code = 0;
        for (auto c : cols) {
            code = code * arr.symbols() + arr.at(r, c);
        }
        if (++counts[code] > index) {
            return false;
        }
    }
    return true;
}

/// All s-column subsets that are not orthogonal (0-based, lexicographic).
inline std::vector<std::vector<std::size_t>> failing_subsets(const OrthogonalArray &arr, std::size_t s) {
    std::vector<std::vector<std::size_t>> out;
    if (s == 0 || s > arr.columns()) {
        return out;
    }
    auto idx = detail::first_combination(s);
    do {
        if (!subset_orthogonal(arr, idx)) {
            out.push_back(idx);
        }
    } while (detail::next_combination(idx, arr.columns()));
    return out;
}

/// Largest s such that every s-subset of columns is orthogonal; 0 if none.
inline std::size_t strength(const OrthogonalArray &arr) {
    std::size_t best = 0;
    for (std::size_t s = 1; s <= arr.columns(); ++s) {
        if (int_pow(arr.symbols(), s) > arr.rows()) {
            break;
        }
        auto idx = detail::first_combination(s);
        bool ok = true;
        do {
            if (!subset_orthogonal(arr, idx)) {
                ok = false;
                break;
            }
        } while (detail::next_combination(idx, arr.columns()));
        if (!ok) {
            break;
        }
        best = s;
    }
    return best;
}

/// Unitarity of the three reshufflings of a two-site gate
/// (a1,a2) -> (b1,b2), read as a 4-column array (a1,a2,b1,b2).
struct GateReshuffles {
    bool u_ok = false;   // (a1,a2) -> (b1,b2)
    bool ut_ok = false;  // (a1,b2) -> (b1,a2)
    bool ur_ok = false;  // (a1,b1) -> (a2,b2)

    bool dual_unitary() const {
        return u_ok && ut_ok;
    }
    bool perfect() const {
        return u_ok && ut_ok && ur_ok;
    }
};

inline GateReshuffles gate_reshuffles(const ClassicalMap &g) {
    if (g.arity != 2) {
        throw DimensionError("gate reshuffles need an arity-2 map");
    }
    std::size_t n = int_pow(g.symbols, 2);
    if (g.table.size() != n) {
        throw DimensionError("gate table has wrong size");
    }
    std::vector<std::uint32_t> data;
    data.reserve(n * 4);
    for (std::size_t in = 0; in < n; ++in) {
        auto a = decode_tuple(in, g.symbols, 2);
        if (g.table[in] >= n) {
            throw DimensionError("gate output out of range");
        }
        auto b = decode_tuple(g.table[in], g.symbols, 2);
        data.insert(data.end(), {a[0], a[1], b[0], b[1]});
    }
    OrthogonalArray arr(g.symbols, 4, std::move(data));
    auto pair_ok = [&](std::size_t x, std::size_t y) {
        std::array<std::size_t, 2> cols{x, y};
        return subset_orthogonal(arr, cols);
    };
    GateReshuffles out;
    out.u_ok = pair_ok(2, 3);
    out.ut_ok = pair_ok(0, 3) && pair_ok(2, 1);
    out.ur_ok = pair_ok(0, 2) && pair_ok(1, 3);
    return out;
}

enum class DecompositionDirection { forward, backward, none };

/// Role of a bipartition with respect to the k = 6 three-gate network.
enum class BipartitionLabel {
    unlabeled,
    hexagonal,      // guaranteed by dual unitarity of the factors
    perfect_gates,  // guaranteed once the factors are perfect
    residual,       // one site from each pair (1,2),(3,4),(5,6): never guaranteed
};

inline const char *label_name(BipartitionLabel l) {
    switch (l) {
        case BipartitionLabel::hexagonal:
            return "hexagonal";
        case BipartitionLabel::perfect_gates:
            return "perfect-gates";
        case BipartitionLabel::residual:
            return "residual";
        case BipartitionLabel::unlabeled:
            break;
    }
    return "unlabeled";
}

struct SubsetVerdict {
    std::vector<std::size_t> sites;  // 1-based, ascending
    bool orthogonal = false;
    BipartitionLabel label = BipartitionLabel::unlabeled;
};

struct BipartitionVerdict {
    std::vector<std::size_t> side;        // contains site 1
    std::vector<std::size_t> complement;
    bool maximal = false;                 // both sides orthogonal
    BipartitionLabel label = BipartitionLabel::unlabeled;
};

struct BipartitionReport {
    std::size_t k = 0;
    DecompositionDirection direction = DecompositionDirection::none;
    std::vector<SubsetVerdict> subsets;            // all C(k, k/2), lexicographic
    std::vector<BipartitionVerdict> bipartitions;  // C(k, k/2) / 2
    std::size_t strength = 0;

    bool all_maximal() const {
        return std::all_of(bipartitions.begin(), bipartitions.end(), [](const auto &b) { return b.maximal; });
    }
    bool all_maximal(BipartitionLabel label) const {
        return std::all_of(bipartitions.begin(), bipartitions.end(),
                           [&](const auto &b) { return b.label != label || b.maximal; });
    }
};

namespace detail {

struct LabeledSide {
    std::array<std::size_t, 3> side;
    BipartitionLabel label;
};

// Forward (▷) network, sides listed by the half containing site 1.
inline constexpr std::array<LabeledSide, 10> forward_labels{{
    {{1, 2, 3}, BipartitionLabel::hexagonal},
    {{1, 5, 6}, BipartitionLabel::hexagonal},  // (2,3,4)|(5,6,1)
    {{1, 2, 6}, BipartitionLabel::hexagonal},  // (6,1,2)|(3,4,5)
    {{1, 2, 4}, BipartitionLabel::perfect_gates},
    {{1, 2, 5}, BipartitionLabel::perfect_gates},
    {{1, 3, 4}, BipartitionLabel::perfect_gates},  // (2,5,6)|(1,3,4)
    {{1, 3, 5}, BipartitionLabel::residual},
    {{1, 4, 5}, BipartitionLabel::residual},
    {{1, 3, 6}, BipartitionLabel::residual},
    {{1, 4, 6}, BipartitionLabel::residual},
}};

inline std::vector<std::size_t> normalized_side(std::vector<std::size_t> side, std::size_t k) {
    std::sort(side.begin(), side.end());
    if (side.front() != 1) {
        std::vector<std::size_t> comp;
        for (std::size_t s = 1; s <= k; ++s) {
            if (!std::binary_search(side.begin(), side.end(), s)) {
                comp.push_back(s);
            }
        }
        return comp;
    }
    return side;
}

inline BipartitionLabel label_for(std::span<const std::size_t> side, DecompositionDirection dir) {
    if (dir == DecompositionDirection::none) {
        return BipartitionLabel::unlabeled;
    }
    for (const auto &entry : forward_labels) {
        std::vector<std::size_t> s(entry.side.begin(), entry.side.end());
        if (dir == DecompositionDirection::backward) {
            // ◁ is ▷ with sites 1<->3 and 4<->6 exchanged.
            for (auto &v : s) {
                static constexpr std::array<std::size_t, 7> mirror{0, 3, 2, 1, 6, 5, 4};
                v = mirror[v];
            }
        }
        s = normalized_side(std::move(s), 6);
        if (std::equal(s.begin(), s.end(), side.begin(), side.end())) {
            return entry.label;
        }
    }
    return BipartitionLabel::unlabeled;
}

}  // namespace detail

/// Orthogonality of every balanced column subset, grouped into bipartitions.
/// Labels follow the three-gate network for k = 6; k = 8 is reported unlabeled.
inline BipartitionReport bipartition_report(const OrthogonalArray &arr, DecompositionDirection direction) {
    std::size_t k = arr.columns();
    if (k != 6 && k != 8) {
        throw DimensionError("bipartition report supports k = 6 or 8, got " + std::to_string(k));
    }
    if (arr.rows() != int_pow(arr.symbols(), k / 2)) {
        throw DimensionError("bipartition report needs D^(k/2) rows");
    }
    BipartitionReport report;
    report.k = k;
    report.direction = direction;
    auto effective = k == 6 ? direction : DecompositionDirection::none;
    auto idx = detail::first_combination(k / 2);
    do {
        SubsetVerdict v;
        for (auto c : idx) {
            v.sites.push_back(c + 1);
        }
        v.orthogonal = subset_orthogonal(arr, idx);
        v.label = detail::label_for(detail::normalized_side(v.sites, k), effective);
        report.subsets.push_back(std::move(v));
    } while (detail::next_combination(idx, k));

    for (const auto &s : report.subsets) {
        if (s.sites.front() != 1) {
            continue;
        }
        BipartitionVerdict b;
        b.side = s.sites;
        for (std::size_t site = 1; site <= k; ++site) {
            if (!std::binary_search(s.sites.begin(), s.sites.end(), site)) {
                b.complement.push_back(site);
            }
        }
        auto comp = std::find_if(report.subsets.begin(), report.subsets.end(),
                                 [&](const SubsetVerdict &o) { return o.sites == b.complement; });
        b.maximal = s.orthogonal && comp->orthogonal;
        b.label = s.label;
        report.bipartitions.push_back(std::move(b));
    }
    report.strength = strength(arr);
    return report;
}

enum class Feasibility { infeasible, not_excluded };

struct BushVerdict {
    Feasibility feasibility = Feasibility::not_excluded;
    std::string citation;
};

/// Known nonexistence results for index-one arrays of strength k/2 on k columns.
inline BushVerdict bush_feasibility(std::uint32_t symbols, std::size_t k) {
    if (k != 6 && k != 8) {
        throw DimensionError("bush_feasibility supports k = 6 or 8");
    }
    std::size_t s = k / 2;
    if (symbols <= s || (k == 8 && symbols <= 5)) {
        return {Feasibility::infeasible, "Bush bound"};
    }
    if (symbols == 6) {
        return {Feasibility::infeasible,
                "no pair of orthogonal Latin squares of order 6, so no strength-2 array on 4 columns and, "
                "by derivation, none of strength k/2 on k columns"};
    }
    return {Feasibility::not_excluded, "no known obstruction"};
}

}  // namespace ame
