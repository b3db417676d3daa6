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
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ame/gf.hpp"

namespace ame {

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SingularMatrixError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Dense matrix over a finite field, stored row-major as element codes.
/// Values are immutable; every operation returns a new matrix.
class Matrix {
   public:
    Matrix(Field field, std::size_t rows, std::size_t cols, std::vector<Code> codes)
        : field_(std::move(field)), rows_(rows), cols_(cols), codes_(std::move(codes)) {
        if (rows_ == 0 || cols_ == 0) {
            throw DimensionError("matrix dimensions must be positive");
        }
        if (codes_.size() != rows_ * cols_) {
            throw DimensionError("entry count does not match dimensions");
        }
        for (Code c : codes_) {
            if (!field_.contains(c)) {
                throw FieldError("matrix entry " + std::to_string(c) + " is not in " + field_.name());
            }
        }
    }

    static Matrix zeros(const Field &field, std::size_t rows, std::size_t cols) {
        return Matrix(field, rows, cols, std::vector<Code>(rows * cols, 0));
    }

    static Matrix identity(const Field &field, std::size_t n) {
        std::vector<Code> codes(n * n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            codes[i * n + i] = 1;
        }
        return Matrix(field, n, n, std::move(codes));
    }

    /// Integer literals go through Field::from_integer (negatives allowed in prime fields).
    static Matrix from_rows(const Field &field, const std::vector<std::vector<std::int64_t>> &rows) {
        if (rows.empty()) {
            throw DimensionError("matrix needs at least one row");
        }
        std::size_t cols = rows.front().size();
        std::vector<Code> codes;
        codes.reserve(rows.size() * cols);
        for (const auto &row : rows) {
            if (row.size() != cols) {
                throw DimensionError("ragged matrix rows");
            }
            for (auto v : row) {
                codes.push_back(field.from_integer(v));
            }
        }
        return Matrix(field, rows.size(), cols, std::move(codes));
    }

    template <typename Fn>
    static Matrix generate(const Field &field, std::size_t rows, std::size_t cols, Fn &&fn) {
        std::vector<Code> codes(rows * cols);
        for (std::size_t i = 0; i < rows; ++i) {
            for (std::size_t j = 0; j < cols; ++j) {
                codes[i * cols + j] = fn(i, j);
            }
        }
        return Matrix(field, rows, cols, std::move(codes));
    }

    const Field &field() const {
        return field_;
    }
    std::size_t rows() const {
        return rows_;
    }
    std::size_t cols() const {
        return cols_;
    }
    bool is_square() const {
        return rows_ == cols_;
    }
    /// 0-based.
    Code code(std::size_t i, std::size_t j) const {
        return codes_[i * cols_ + j];
    }
    Element at(std::size_t i, std::size_t j) const {
        return field_.element(code(i, j));
    }
    std::span<const Code> codes() const {
        return codes_;
    }
    std::vector<std::vector<std::int64_t>> to_rows() const {
        std::vector<std::vector<std::int64_t>> out(rows_, std::vector<std::int64_t>(cols_));
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) {
                out[i][j] = code(i, j);
            }
        }
        return out;
    }

    Matrix with_entry(std::size_t i, std::size_t j, Code value) const {
        auto codes = codes_;
        codes.at(i * cols_ + j) = value;
        return Matrix(field_, rows_, cols_, std::move(codes));
    }

    Matrix transpose() const {
        return generate(field_, cols_, rows_, [&](std::size_t i, std::size_t j) { return code(j, i); });
    }

    /// Row i of the result is row perm[i] of this matrix.
    Matrix permute_rows(std::span<const std::size_t> perm) const {
        check_permutation(perm, rows_);
        return generate(field_, rows_, cols_, [&](std::size_t i, std::size_t j) { return code(perm[i], j); });
    }

    /// Column j of the result is column perm[j] of this matrix.
    Matrix permute_cols(std::span<const std::size_t> perm) const {
        check_permutation(perm, cols_);
        return generate(field_, rows_, cols_, [&](std::size_t i, std::size_t j) { return code(i, perm[j]); });
    }

    Matrix submatrix(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const {
        for (auto r : rows) {
            if (r >= rows_) {
                throw DimensionError("row index out of range");
            }
        }
        for (auto c : cols) {
            if (c >= cols_) {
                throw DimensionError("column index out of range");
            }
        }
        return generate(field_, rows.size(), cols.size(),
                        [&](std::size_t i, std::size_t j) { return code(rows[i], cols[j]); });
    }

    Matrix scale_row(std::size_t i, Code factor) const {
        return generate(field_, rows_, cols_, [&](std::size_t r, std::size_t c) {
            return r == i ? field_.mul(factor, code(r, c)) : code(r, c);
        });
    }

    Matrix scale_col(std::size_t j, Code factor) const {
        return generate(field_, rows_, cols_, [&](std::size_t r, std::size_t c) {
            return c == j ? field_.mul(code(r, c), factor) : code(r, c);
        });
    }

    friend Matrix operator*(const Matrix &a, const Matrix &b) {
        if (!(a.field_ == b.field_)) {
            throw FieldError("matrix operands belong to different fields");
        }
        if (a.cols_ != b.rows_) {
            throw DimensionError("inner dimensions do not match");
        }
        const Field &f = a.field_;
        return generate(f, a.rows_, b.cols_, [&](std::size_t i, std::size_t j) {
            Code acc = 0;
            for (std::size_t t = 0; t < a.cols_; ++t) {
                acc = f.add(acc, f.mul(a.code(i, t), b.code(t, j)));
            }
            return acc;
        });
    }

    friend bool operator==(const Matrix &a, const Matrix &b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.codes_ == b.codes_ && a.field_ == b.field_;
    }

    std::string to_string() const {
        std::string out;
        for (std::size_t i = 0; i < rows_; ++i) {
            out += i == 0 ? "[[" : " [";
            for (std::size_t j = 0; j < cols_; ++j) {
                if (j) {
                    out += ',';
                }
                out += std::to_string(code(i, j));
            }
            out += i + 1 == rows_ ? "]]" : "],\n";
        }
        return out;
    }

   private:
    static void check_permutation(std::span<const std::size_t> perm, std::size_t n) {
        if (perm.size() != n) {
            throw DimensionError("permutation has wrong length");
        }
        std::vector<bool> seen(n, false);
        for (auto v : perm) {
            if (v >= n || seen[v]) {
                throw DimensionError("not a permutation");
            }
            seen[v] = true;
        }
    }

    Field field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Code> codes_;
};

namespace detail {

/// Determinant of an n×n code block by Gaussian elimination; destroys `a`.
inline Code det_in_place(const Field &f, Code *a, std::size_t n) {
    Code det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a[pivot * n + col] == 0) {
            ++pivot;
        }
        if (pivot == n) {
            return 0;
        }
        if (pivot != col) {
            for (std::size_t j = col; j < n; ++j) {
                std::swap(a[pivot * n + j], a[col * n + j]);
            }
            det = f.neg(det);
        }
        Code p = a[col * n + col];
        det = f.mul(det, p);
        Code p_inv = f.inv(p);
        for (std::size_t r = col + 1; r < n; ++r) {
            Code factor = f.mul(a[r * n + col], p_inv);
            if (factor == 0) {
                continue;
            }
            for (std::size_t j = col; j < n; ++j) {
                a[r * n + j] = f.sub(a[r * n + j], f.mul(factor, a[col * n + j]));
            }
        }
    }
    return det;
}

/// Determinant of the minor picking `rows` × `cols` out of a row-major block
/// with `stride` columns. Small sizes avoid heap allocation.
inline Code minor_det(const Field &f, std::span<const Code> block, std::size_t stride,
                      std::span<const std::size_t> rows, std::span<const std::size_t> cols) {
    std::size_t n = rows.size();
    if (n == 1) {
        return block[rows[0] * stride + cols[0]];
    }
    if (n == 2) {
        return f.sub(f.mul(block[rows[0] * stride + cols[0]], block[rows[1] * stride + cols[1]]),
                     f.mul(block[rows[0] * stride + cols[1]], block[rows[1] * stride + cols[0]]));
    }
    std::array<Code, 64> small{};
    std::vector<Code> large;
    Code *buf = small.data();
    if (n * n > small.size()) {
        large.resize(n * n);
        buf = large.data();
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            buf[i * n + j] = block[rows[i] * stride + cols[j]];
        }
    }
    return det_in_place(f, buf, n);
}

/// Advances a lexicographic c-subset of {0..n-1}; false when exhausted.
inline bool next_combination(std::vector<std::size_t> &idx, std::size_t n) {
    std::size_t c = idx.size();
    for (std::size_t i = c; i-- > 0;) {
        if (idx[i] < n - c + i) {
            ++idx[i];
            for (std::size_t j = i + 1; j < c; ++j) {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    return false;
}

inline std::vector<std::size_t> first_combination(std::size_t c) {
    std::vector<std::size_t> idx(c);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    return idx;
}

}  // namespace detail

inline Code det(const Matrix &m) {
    if (!m.is_square()) {
        throw DimensionError("determinant of a non-square matrix");
    }
    std::vector<Code> buf(m.codes().begin(), m.codes().end());
    return detail::det_in_place(m.field(), buf.data(), m.rows());
}

inline Matrix inverse(const Matrix &m) {
    if (!m.is_square()) {
        throw DimensionError("inverse of a non-square matrix");
    }
    const Field &f = m.field();
    std::size_t n = m.rows();
    std::vector<Code> a(m.codes().begin(), m.codes().end());
    std::vector<Code> inv(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        inv[i * n + i] = 1;
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a[pivot * n + col] == 0) {
            ++pivot;
        }
        if (pivot == n) {
            throw SingularMatrixError("matrix is singular");
        }
        for (std::size_t j = 0; j < n; ++j) {
            std::swap(a[pivot * n + j], a[col * n + j]);
            std::swap(inv[pivot * n + j], inv[col * n + j]);
        }
        Code p_inv = f.inv(a[col * n + col]);
        for (std::size_t j = 0; j < n; ++j) {
            a[col * n + j] = f.mul(a[col * n + j], p_inv);
            inv[col * n + j] = f.mul(inv[col * n + j], p_inv);
        }
        for (std::size_t r = 0; r < n; ++r) {
            Code factor = a[r * n + col];
            if (r == col || factor == 0) {
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                a[r * n + j] = f.sub(a[r * n + j], f.mul(factor, a[col * n + j]));
                inv[r * n + j] = f.sub(inv[r * n + j], f.mul(factor, inv[col * n + j]));
            }
        }
    }
    return Matrix(f, n, n, std::move(inv));
}

/// Row and column subsets (0-based, ascending) selecting one minor.
struct MinorIndex {
    std::vector<std::size_t> rows;
    std::vector<std::size_t> cols;

    std::size_t size() const {
        return rows.size();
    }
    friend bool operator==(const MinorIndex &, const MinorIndex &) = default;

    /// 1-based description, e.g. "rows {1,3} cols {2,3}".
    std::string describe() const {
        auto list = [](const std::vector<std::size_t> &v) {
            std::string s = "{";
            for (std::size_t i = 0; i < v.size(); ++i) {
                s += (i ? "," : "") + std::to_string(v[i] + 1);
            }
            return s + "}";
        };
        return std::to_string(size()) + "x" + std::to_string(size()) + " minor rows " + list(rows) + " cols " +
               list(cols);
    }
};

/// First vanishing minor of a row-major `rows` × `cols` block in the order:
/// increasing size, then lexicographic row subset, then lexicographic column
/// subset. Works on raw codes so census workers can skip building a Matrix.
inline std::optional<MinorIndex> first_vanishing_minor(const Field &f, std::span<const Code> block, std::size_t rows,
                                                       std::size_t cols) {
    for (std::size_t c = 1; c <= std::min(rows, cols); ++c) {
        auto r = detail::first_combination(c);
        do {
            auto k = detail::first_combination(c);
            do {
                if (detail::minor_det(f, block, cols, r, k) == 0) {
                    return MinorIndex{r, k};
                }
            } while (detail::next_combination(k, cols));
        } while (detail::next_combination(r, rows));
    }
    return std::nullopt;
}

/// Square n × n block.
inline std::optional<MinorIndex> first_vanishing_minor(const Field &f, std::span<const Code> block, std::size_t n) {
    return first_vanishing_minor(f, block, n, n);
}

inline std::optional<MinorIndex> first_vanishing_minor(const Matrix &m) {
    return first_vanishing_minor(m.field(), m.codes(), m.rows(), m.cols());
}

/// Superregularity: every square minor of every size is nonzero.
inline bool all_minors_nonzero(const Matrix &m) {
    return !first_vanishing_minor(m).has_value();
}

/// g_ij = 1 / (x_i - y_j). All of x and y together must be distinct.
inline Matrix cauchy(const Field &f, std::span<const Code> x, std::span<const Code> y) {
    if (x.empty() || y.empty()) {
        throw DimensionError("cauchy matrix needs nonempty parameter lists");
    }
    std::vector<bool> seen(f.order(), false);
    auto mark = [&](Code v) {
        if (!f.contains(v)) {
            throw FieldError("cauchy parameter " + std::to_string(v) + " is not in " + f.name());
        }
        if (seen[v]) {
            throw DimensionError("cauchy parameters must be pairwise distinct, repeated " + std::to_string(v));
        }
        seen[v] = true;
    };
    for (auto v : x) {
        mark(v);
    }
    for (auto v : y) {
        mark(v);
    }
    return Matrix::generate(f, x.size(), y.size(),
                            [&](std::size_t i, std::size_t j) { return f.inv(f.sub(x[i], y[j])); });
}

/// Position of a 2×2 gate inside a 3-site operator.
enum class Slot { A, B, C };

/// Ã on sites (1,2), B̃ on (1,3), C̃ on (2,3); identity elsewhere.
inline Matrix embed6(const Matrix &gate, Slot slot) {
    if (gate.rows() != 2 || gate.cols() != 2) {
        throw DimensionError("embed6 needs a 2x2 gate");
    }
    std::array<std::size_t, 2> at{};
    switch (slot) {
        case Slot::A:
            at = {0, 1};
            break;
        case Slot::B:
            at = {0, 2};
            break;
        case Slot::C:
            at = {1, 2};
            break;
    }
    return Matrix::generate(gate.field(), 3, 3, [&](std::size_t i, std::size_t j) -> Code {
        for (std::size_t a = 0; a < 2; ++a) {
            for (std::size_t b = 0; b < 2; ++b) {
                if (i == at[a] && j == at[b]) {
                    return gate.code(a, b);
                }
            }
        }
        return i == j ? 1 : 0;
    });
}

/// Identity of the given size with rows/columns j,k (1-based, j < k) replaced
/// by the gate.
inline Matrix embed8(const Matrix &gate, std::size_t j, std::size_t k, std::size_t size = 4) {
    if (gate.rows() != 2 || gate.cols() != 2) {
        throw DimensionError("embed8 needs a 2x2 gate");
    }
    if (j < 1 || j >= k || k > size) {
        throw DimensionError("invalid site pair (" + std::to_string(j) + "," + std::to_string(k) + ")");
    }
    std::array<std::size_t, 2> at{j - 1, k - 1};
    return Matrix::generate(gate.field(), size, size, [&](std::size_t r, std::size_t c) -> Code {
        for (std::size_t a = 0; a < 2; ++a) {
            for (std::size_t b = 0; b < 2; ++b) {
                if (r == at[a] && c == at[b]) {
                    return gate.code(a, b);
                }
            }
        }
        return r == c ? 1 : 0;
    });
}

/// First minors of a 4×4 matrix. Accessors take 1-based indices.
/// m(i,j) = det of G with row i and column j deleted (unsigned),
/// M(i,j) = g_ij·m(i,j), N(i,j) = det of rows and columns {i,j}.
class CofactorTable {
   public:
    explicit CofactorTable(const Matrix &g) : field_(g.field()) {
        if (g.rows() != 4 || g.cols() != 4) {
            throw DimensionError("cofactor table needs a 4x4 matrix");
        }
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = 0; j < 4; ++j) {
                std::vector<std::size_t> rows, cols;
                for (std::size_t t = 0; t < 4; ++t) {
                    if (t != i) {
                        rows.push_back(t);
                    }
                    if (t != j) {
                        cols.push_back(t);
                    }
                }
                m_[i][j] = detail::minor_det(field_, g.codes(), 4, rows, cols);
                big_m_[i][j] = field_.mul(g.code(i, j), m_[i][j]);
            }
        }
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = i + 1; j < 4; ++j) {
                std::array<std::size_t, 2> idx{i, j};
                n_[i][j] = n_[j][i] = detail::minor_det(field_, g.codes(), 4, idx, idx);
            }
        }
    }

    Code m(std::size_t i, std::size_t j) const {
        return m_.at(i - 1).at(j - 1);
    }
    Code M(std::size_t i, std::size_t j) const {
        return big_m_.at(i - 1).at(j - 1);
    }
    /// Requires i != j.
    Code N(std::size_t i, std::size_t j) const {
        if (i == j) {
            throw DimensionError("N(i,j) needs distinct indices");
        }
        return n_.at(i - 1).at(j - 1);
    }
    const Field &field() const {
        return field_;
    }

   private:
    Field field_;
    std::array<std::array<Code, 4>, 4> m_{};
    std::array<std::array<Code, 4>, 4> big_m_{};
    std::array<std::array<Code, 4>, 4> n_{};
};

inline CofactorTable cofactors(const Matrix &g) {
    return CofactorTable(g);
}

}  // namespace ame
