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

#include <span>
#include <stdexcept>
#include <string>

#include "ame/matrix.hpp"

namespace ame {

/// Base for "this matrix has no decomposition of the requested form".
struct FactorizationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotSuperregularError : FactorizationError {
    explicit NotSuperregularError(MinorIndex m)
        : FactorizationError("matrix is not superregular: vanishing " + m.describe()), minor(std::move(m)) {
    }
    MinorIndex minor;
};

enum class Direction { forward, backward };

inline const char *direction_name(Direction d) {
    return d == Direction::forward ? "forward" : "backward";
}

struct ConditionZeroError : FactorizationError {
    explicit ConditionZeroError(Direction d)
        : FactorizationError(std::string(direction_name(d)) + " condition = 0"), direction(d) {
    }
    Direction direction;
};

/// Three-gate factorization of a 3×3 matrix.
///
/// Forward: G = C̃·B̃·Ã with Ã on sites (1,2), B̃ on (1,3), C̃ on (2,3).
///
/// Backward: gates are written in the mirrored site frame (sites 3,2,1), so
/// that they coincide with the forward factors of the reflected matrix with A
/// and C exchanged. In the original frame G = Ã'·B̃'·C̃' where X' = reversed(X).
struct Decomposition6 {
    Direction direction = Direction::forward;
    Matrix source;
    Matrix a;
    Matrix b;
    Matrix c;
    Code e1 = 1;  // accumulated gauge factors, (1,1) in the canonical gauge
    Code e3 = 1;
    Code condition_value = 0;
};

/// PXP with P the 2×2 swap: both indices reversed.
inline Matrix reversed(const Matrix &gate) {
    if (gate.rows() != 2 || gate.cols() != 2) {
        throw DimensionError("reversed needs a 2x2 gate");
    }
    return Matrix::generate(gate.field(), 2, 2, [&](std::size_t i, std::size_t j) { return gate.code(1 - i, 1 - j); });
}

/// J·G·J with J the anti-diagonal permutation (sites 1 <-> 3).
inline Matrix reflected(const Matrix &g) {
    if (!g.is_square()) {
        throw DimensionError("reflected needs a square matrix");
    }
    std::size_t n = g.rows();
    return Matrix::generate(g.field(), n, n,
                            [&](std::size_t i, std::size_t j) { return g.code(n - 1 - i, n - 1 - j); });
}

namespace detail {

inline void require_3x3(const Matrix &g) {
    if (g.rows() != 3 || g.cols() != 3) {
        throw DimensionError("expected a 3x3 matrix");
    }
}

/// 1-based accessor for closed-form expressions.
struct G3 {
    const Matrix &m;
    Code operator()(std::size_t i, std::size_t j) const {
        return m.code(i - 1, j - 1);
    }
};

}  // namespace detail

namespace detail {

/// Both conditions on a raw row-major 3×3 block; census workers call these directly.
inline Code forward_condition_codes(const Field &f, std::span<const Code> g) {
    auto t = [&](std::size_t a, std::size_t b, std::size_t c) { return f.mul(f.mul(g[a], g[b]), g[c]); };
    // g11g22g33 + g12g23g31 - g11g23g32 - g12g21g33
    return f.sub(f.add(t(0, 4, 8), t(1, 5, 6)), f.add(t(0, 5, 7), t(1, 3, 8)));
}

inline Code backward_condition_codes(const Field &f, std::span<const Code> g) {
    auto t = [&](std::size_t a, std::size_t b, std::size_t c) { return f.mul(f.mul(g[a], g[b]), g[c]); };
    // g11g22g33 + g13g21g32 - g11g23g32 - g12g21g33
    return f.sub(f.add(t(0, 4, 8), t(2, 3, 7)), f.add(t(0, 5, 7), t(1, 3, 8)));
}

}  // namespace detail

/// g11g22g33 + g12g23g31 - g11g23g32 - g12g21g33.
inline Code forward_condition(const Matrix &g) {
    detail::require_3x3(g);
    return detail::forward_condition_codes(g.field(), g.codes());
}

/// g11g22g33 + g13g21g32 - g11g23g32 - g12g21g33.
inline Code backward_condition(const Matrix &g) {
    detail::require_3x3(g);
    return detail::backward_condition_codes(g.field(), g.codes());
}

inline Matrix recompose(const Decomposition6 &d) {
    if (d.direction == Direction::forward) {
        return embed6(d.c, Slot::C) * embed6(d.b, Slot::B) * embed6(d.a, Slot::A);
    }
    return embed6(reversed(d.a), Slot::A) * embed6(reversed(d.b), Slot::B) * embed6(reversed(d.c), Slot::C);
}

inline bool verify(const Decomposition6 &d) {
    return recompose(d) == d.source;
}

namespace detail {

inline void require_superregular(const Matrix &g) {
    if (auto m = first_vanishing_minor(g)) {
        throw NotSuperregularError(*m);
    }
}

inline Matrix gate2(const Field &f, Code a11, Code a12, Code a21, Code a22) {
    return Matrix(f, 2, 2, {a11, a12, a21, a22});
}

}  // namespace detail

/// Canonical-gauge forward factors (a11 = a22 = b22 = 1).
inline Decomposition6 factor_forward(const Matrix &g) {
    detail::require_3x3(g);
    detail::require_superregular(g);
    Code key = forward_condition(g);
    if (key == 0) {
        throw ConditionZeroError(Direction::forward);
    }
    const Field &f = g.field();
    detail::G3 x{g};
    auto mul = [&](Code a, Code b) { return f.mul(a, b); };
    auto minor2 = [&](Code a, Code d, Code b, Code c) { return f.sub(mul(a, d), mul(b, c)); };
    Code key_inv = f.inv(key);
    Code m22_33 = minor2(x(2, 2), x(3, 3), x(2, 3), x(3, 2));
    Code m11_22 = minor2(x(1, 1), x(2, 2), x(1, 2), x(2, 1));

    Code a12 = f.div(x(1, 2), x(1, 1));
    Code a21 = f.div(minor2(x(2, 1), x(3, 3), x(2, 3), x(3, 1)), m22_33);
    Code b21 = mul(mul(x(1, 1), minor2(x(2, 2), x(3, 1), x(2, 1), x(3, 2))), key_inv);
    Code c11 = mul(mul(m11_22, m22_33), key_inv);
    Code c21 = mul(mul(minor2(x(1, 1), x(3, 2), x(1, 2), x(3, 1)), m22_33), key_inv);

    return Decomposition6{
        Direction::forward,
        g,
        detail::gate2(f, 1, a12, a21, 1),
        detail::gate2(f, x(1, 1), x(1, 3), b21, 1),
        detail::gate2(f, c11, x(2, 3), c21, x(3, 3)),
        1,
        1,
        key,
    };
}

/// Canonical-gauge backward factors (c11 = c22 = b22 = 1), mirrored frame.
inline Decomposition6 factor_backward(const Matrix &g) {
    detail::require_3x3(g);
    detail::require_superregular(g);
    Code key = backward_condition(g);
    if (key == 0) {
        throw ConditionZeroError(Direction::backward);
    }
    const Field &f = g.field();
    detail::G3 x{g};
    auto mul = [&](Code a, Code b) { return f.mul(a, b); };
    auto minor2 = [&](Code a, Code d, Code b, Code c) { return f.sub(mul(a, d), mul(b, c)); };
    Code key_inv = f.inv(key);
    Code m22_33 = minor2(x(2, 2), x(3, 3), x(2, 3), x(3, 2));
    Code m11_22 = minor2(x(1, 1), x(2, 2), x(1, 2), x(2, 1));

    Code a11 = mul(mul(m22_33, m11_22), key_inv);
    Code a21 = mul(mul(minor2(x(1, 2), x(3, 3), x(1, 3), x(3, 2)), m11_22), key_inv);
    Code b21 = mul(mul(x(3, 3), minor2(x(1, 3), x(2, 2), x(1, 2), x(2, 3))), key_inv);
    Code c12 = f.div(x(3, 2), x(3, 3));
    Code c21 = f.div(minor2(x(1, 1), x(2, 3), x(1, 3), x(2, 1)), m11_22);

    return Decomposition6{
        Direction::backward,
        g,
        detail::gate2(f, a11, x(2, 1), a21, x(1, 1)),
        detail::gate2(f, x(3, 3), x(3, 1), b21, 1),
        detail::gate2(f, 1, c12, c21, 1),
        1,
        1,
        key,
    };
}

inline Decomposition6 factor(const Matrix &g, Direction d) {
    return d == Direction::forward ? factor_forward(g) : factor_backward(g);
}

/// Diagonal gauge C̃ -> C̃E3, B̃ -> E3⁻¹B̃E1, Ã -> E1⁻¹Ã with
/// E1 = diag(e1,1,1), E3 = diag(1,1,e3); applied in the mirrored frame for
/// backward decompositions.
inline Decomposition6 gauge_transform(const Decomposition6 &d, Code e1, Code e3) {
    const Field &f = d.source.field();
    if (e1 == 0 || e3 == 0) {
        throw FieldError("gauge factors must be nonzero");
    }
    // In the forward frame: A acts on (1,2), B on (1,3), C on (2,3).
    const Matrix &fa = d.direction == Direction::forward ? d.a : d.c;
    const Matrix &fc = d.direction == Direction::forward ? d.c : d.a;
    Matrix na = fa.scale_row(0, f.inv(e1));
    Matrix nb = d.b.scale_row(1, f.inv(e3)).scale_col(0, e1);
    Matrix nc = fc.scale_col(1, e3);
    Decomposition6 out = d;
    out.a = d.direction == Direction::forward ? na : nc;
    out.c = d.direction == Direction::forward ? nc : na;
    out.b = nb;
    out.e1 = f.mul(d.e1, e1);
    out.e3 = f.mul(d.e3, e3);
    return out;
}

/// A 2×2 gate is perfect iff it is superregular (entries and determinant nonzero).
inline bool is_perfect_gate(const Matrix &gate) {
    if (gate.rows() != 2 || gate.cols() != 2) {
        throw DimensionError("expected a 2x2 gate");
    }
    return all_minors_nonzero(gate);
}

/// Ã·B̃·C̃ == C̃·B̃·Ã.
inline bool yb_check(const Matrix &a, const Matrix &b, const Matrix &c) {
    Matrix ea = embed6(a, Slot::A), eb = embed6(b, Slot::B), ec = embed6(c, Slot::C);
    return ea * eb * ec == ec * eb * ea;
}

/// Free entries of a Yang-Baxter triple; the other four are solved for.
struct YbParameters {
    Code a11 = 0, a21 = 0, b11 = 0, b12 = 0, b21 = 0, b22 = 0, c12 = 0, c22 = 0;
};

struct YangBaxterTriple {
    Matrix a;
    Matrix b;
    Matrix c;
    YbParameters free;

    Matrix product() const {
        return embed6(a, Slot::A) * embed6(b, Slot::B) * embed6(c, Slot::C);
    }
    bool all_perfect() const {
        return is_perfect_gate(a) && is_perfect_gate(b) && is_perfect_gate(c) && all_minors_nonzero(product());
    }
};

/// Requires a21 != 0 and c12 != 0. The factors need not be perfect.
inline YangBaxterTriple yb_build(const Field &f, const YbParameters &p) {
    for (Code v : {p.a11, p.a21, p.b11, p.b12, p.b21, p.b22, p.c12, p.c22}) {
        if (!f.contains(v)) {
            throw FieldError("Yang-Baxter parameter out of range for " + f.name());
        }
    }
    if (p.a21 == 0) {
        throw FieldError("Yang-Baxter solution needs a21 != 0");
    }
    if (p.c12 == 0) {
        throw FieldError("Yang-Baxter solution needs c12 != 0");
    }
    Code shared = f.sub(1, f.mul(p.a11, p.c22));  // 1 - a11 c22
    Code a12 = f.mul(f.div(p.b12, p.c12), shared);
    Code c21 = f.mul(f.div(p.b21, p.a21), shared);
    Code a22 = f.sub(p.b22, f.div(f.mul(f.mul(p.a21, p.b12), p.c22), p.c12));
    Code c11 = f.sub(p.b11, f.div(f.mul(f.mul(p.a11, p.b21), p.c12), p.a21));
    return YangBaxterTriple{
        detail::gate2(f, p.a11, a12, p.a21, a22),
        detail::gate2(f, p.b11, p.b12, p.b21, p.b22),
        detail::gate2(f, c11, p.c12, c21, p.c22),
        p,
    };
}

}  // namespace ame
