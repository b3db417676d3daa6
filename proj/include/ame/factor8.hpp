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

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "ame/factor6.hpp"
#include "ame/matrix.hpp"

namespace ame {

/// Site pair (j,k) of a two-site gate, 1-based, j < k.
struct SitePair {
    std::size_t j = 1;
    std::size_t k = 2;

    std::string key() const {
        return std::to_string(j) + std::to_string(k);
    }
    friend bool operator==(const SitePair &, const SitePair &) = default;
};

/// Gate pairs in application order: A12 acts first, A34 last.
inline constexpr std::array<SitePair, 6> gate_pairs8{{{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}};

enum class Condition8Id { m11_ne_m12, m34_ne_m44, sum_nonzero, n12_nonzero, n34_nonzero, minor11_nonzero };

struct Condition8 {
    Condition8Id id;
    std::string name;         // e.g. "M34 != M44"
    std::string failure;      // e.g. "M34 = M44"
    Code value = 0;           // the quantity that must be nonzero
    bool holds = false;
    bool implied_by_superregularity = false;
};

struct ConditionReport8 {
    std::array<Condition8, 6> conditions;

    bool all_hold() const {
        for (const auto &c : conditions) {
            if (!c.holds) {
                return false;
            }
        }
        return true;
    }
    const Condition8 *first_failure() const {
        for (const auto &c : conditions) {
            if (!c.holds) {
                return &c;
            }
        }
        return nullptr;
    }
    const Condition8 &operator[](Condition8Id id) const {
        return conditions[static_cast<std::size_t>(id)];
    }
};

struct ConditionFailedError : FactorizationError {
    explicit ConditionFailedError(const Condition8 &c)
        : FactorizationError("condition failed: " + c.failure), condition(c) {
    }
    Condition8 condition;
};

/// The six nonvanishing denominators of the closed-form k = 8 solution.
inline ConditionReport8 conditions8(const Matrix &g) {
    CofactorTable t(g);
    const Field &f = g.field();
    auto make = [&](Condition8Id id, std::string name, std::string failure, Code value, bool implied) {
        return Condition8{id, std::move(name), std::move(failure), value, value != 0, implied};
    };
    Code sum = f.add(f.sub(t.M(2, 4), t.M(3, 4)), t.M(4, 4));
    return ConditionReport8{{
        make(Condition8Id::m11_ne_m12, "M11 != M12", "M11 = M12", f.sub(t.M(1, 1), t.M(1, 2)), false),
        make(Condition8Id::m34_ne_m44, "M34 != M44", "M34 = M44", f.sub(t.M(4, 4), t.M(3, 4)), false),
        make(Condition8Id::sum_nonzero, "M24 - M34 + M44 != 0", "M24 - M34 + M44 = 0", sum, false),
        make(Condition8Id::n12_nonzero, "N12 != 0", "N12 = 0", t.N(1, 2), true),
        make(Condition8Id::n34_nonzero, "N34 != 0", "N34 = 0", t.N(3, 4), true),
        make(Condition8Id::minor11_nonzero, "m11 != 0", "m11 = 0", t.m(1, 1), true),
    }};
}

/// G = Ã34·Ã24·Ã23·Ã14·Ã13·Ã12.
struct Decomposition8 {
    Matrix source;
    std::array<Matrix, 6> gates;  // indexed like gate_pairs8
    ConditionReport8 conditions;

    const Matrix &gate(std::size_t j, std::size_t k) const {
        for (std::size_t i = 0; i < gate_pairs8.size(); ++i) {
            if (gate_pairs8[i] == SitePair{j, k}) {
                return gates[i];
            }
        }
        throw DimensionError("no gate on pair (" + std::to_string(j) + "," + std::to_string(k) + ")");
    }
};

inline Matrix recompose(const Decomposition8 &d) {
    Matrix out = Matrix::identity(d.source.field(), 4);
    for (std::size_t i = 0; i < gate_pairs8.size(); ++i) {
        out = embed8(d.gates[i], gate_pairs8[i].j, gate_pairs8[i].k) * out;
    }
    return out;
}

inline bool verify8(const Decomposition8 &d) {
    return recompose(d) == d.source;
}

/// Closed-form six-gate factorization. Entries not given by a formula are the
/// gauge-fixed ones and equal 1.
inline Decomposition8 factor8(const Matrix &g) {
    if (g.rows() != 4 || g.cols() != 4) {
        throw DimensionError("factor8 needs a 4x4 matrix");
    }
    if (auto m = first_vanishing_minor(g)) {
        throw NotSuperregularError(*m);
    }
    ConditionReport8 report = conditions8(g);
    if (const Condition8 *bad = report.first_failure()) {
        throw ConditionFailedError(*bad);
    }
    const Field &f = g.field();
    CofactorTable t(g);
    auto x = [&](std::size_t i, std::size_t j) { return g.code(i - 1, j - 1); };
    auto mul = [&](Code a, Code b) { return f.mul(a, b); };
    auto div = [&](Code a, Code b) { return f.div(a, b); };

    Code d11_12 = report[Condition8Id::m11_ne_m12].value;  // M11 - M12
    Code d44_34 = report[Condition8Id::m34_ne_m44].value;  // M44 - M34
    Code sum = report[Condition8Id::sum_nonzero].value;    // M24 - M34 + M44
    Code n12 = t.N(1, 2), n34 = t.N(3, 4), m11 = t.m(1, 1);

    Code a12_12 = div(x(1, 2), x(1, 1));
    Code a12_21 = div(t.m(1, 2), m11);
    Code a13_12 = div(x(1, 3), x(1, 1));
    Code a13_21 = div(mul(t.m(1, 3), x(1, 1)), f.neg(d11_12));  // / (M12 - M11)
    Code a14_21 = div(mul(x(1, 1), t.m(1, 4)), sum);

    Code a23_12 = div(mul(d11_12, f.sub(mul(x(2, 3), sum), mul(mul(x(1, 3), x(2, 4)), t.m(1, 4)))),
                      mul(mul(n12, sum), m11));
    Code cross = f.add(f.sub(mul(mul(x(1, 1), x(3, 2)), x(4, 4)), mul(mul(x(1, 2), x(3, 1)), x(4, 4))),
                       f.sub(mul(mul(x(1, 2), x(3, 4)), x(4, 1)), mul(mul(x(1, 1), x(3, 4)), x(4, 2))));
    Code a23_21 = div(mul(m11, cross), mul(n34, d11_12));

    Code a24_11 = div(mul(m11, n12), d11_12);
    Code a24_21 = div(f.neg(mul(mul(m11, t.m(2, 4)), n12)), mul(d11_12, d44_34));
    Code a34_11 = div(mul(n34, t.m(4, 4)), d44_34);
    Code a34_21 = div(mul(n34, t.m(3, 4)), d44_34);

    return Decomposition8{
        g,
        {
            detail::gate2(f, 1, a12_12, a12_21, 1),
            detail::gate2(f, 1, a13_12, a13_21, 1),
            detail::gate2(f, x(1, 1), x(1, 4), a14_21, 1),
            detail::gate2(f, 1, a23_12, a23_21, 1),
            detail::gate2(f, a24_11, x(2, 4), a24_21, 1),
            detail::gate2(f, a34_11, x(3, 4), a34_21, x(4, 4)),
        },
        report,
    };
}

struct GatePerfection {
    SitePair pair;
    bool perfect = false;
    bool identity = false;
};

inline std::array<GatePerfection, 6> gate_perfection_report(const Decomposition8 &d) {
    std::array<GatePerfection, 6> out;
    for (std::size_t i = 0; i < 6; ++i) {
        out[i] = {gate_pairs8[i], all_minors_nonzero(d.gates[i]),
                  d.gates[i] == Matrix::identity(d.gates[i].field(), 2)};
    }
    return out;
}

}  // namespace ame
