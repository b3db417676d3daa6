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
#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ame {

/// Integer code of a field element. The base-p digits of the code are the
/// polynomial coefficients, least-significant digit = constant term.
using Code = std::uint32_t;

struct FieldError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

namespace detail {

using Poly = std::vector<std::uint32_t>;  // coefficients, constant term first

inline bool is_prime(std::uint64_t p) {
    if (p < 2) {
        return false;
    }
    for (std::uint64_t d = 2; d * d <= p; ++d) {
        if (p % d == 0) {
            return false;
        }
    }
    return true;
}

inline void trim(Poly &a) {
    while (!a.empty() && a.back() == 0) {
        a.pop_back();
    }
}

inline std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
    // p is prime and small, so Fermat is fine.
    std::uint64_t result = 1, base = a % p;
    std::uint32_t e = p - 2;
    while (e) {
        if (e & 1) {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(result);
}

/// Remainder of a modulo b over GF(p); b must be nonzero.
inline Poly poly_mod(Poly a, const Poly &b, std::uint32_t p) {
    trim(a);
    std::size_t db = b.size() - 1;
    std::uint32_t lead_inv = inv_mod(b.back(), p);
    while (a.size() > db) {
        std::uint64_t factor = std::uint64_t{a.back()} * lead_inv % p;
        std::size_t shift = a.size() - 1 - db;
        for (std::size_t i = 0; i <= db; ++i) {
            a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + std::uint64_t{p - factor} * b[i]) % p);
        }
        trim(a);
    }
    return a;
}

inline Poly poly_from_code(std::uint64_t code, std::uint32_t p) {
    Poly out;
    while (code) {
        out.push_back(static_cast<std::uint32_t>(code % p));
        code /= p;
    }
    return out;
}

/// Irreducibility by trial division against every monic polynomial of degree 1..n/2.
inline bool is_irreducible(const Poly &f, std::uint32_t p) {
    std::size_t n = f.size() - 1;
    for (std::size_t d = 1; d <= n / 2; ++d) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < d; ++i) {
            count *= p;
        }
        for (std::uint64_t low = 0; low < count; ++low) {
            Poly g = poly_from_code(low, p);
            g.resize(d + 1, 0);
            g[d] = 1;
            if (poly_mod(f, g, p).empty()) {
                return false;
            }
        }
    }
    return true;
}

struct FieldTables {
    std::uint32_t p = 0;
    std::uint32_t n = 0;
    std::uint32_t q = 0;
    Poly modulus;
    std::vector<Code> exp;   // exp[i] = g^i, size q-1
    std::vector<std::uint32_t> log;  // log[x] for x != 0
    std::vector<std::uint16_t> add_table;  // q <= 256 only
    std::vector<std::uint16_t> mul_table;  // q <= 256 only
    std::vector<Code> inv_table;
    std::vector<Code> neg_table;

    Code slow_add(Code a, Code b) const {
        if (n == 1) {
            return (a + b) % p;
        }
        if (p == 2) {
            return a ^ b;
        }
        Code out = 0, scale = 1;
        while (a || b) {
            out += ((a % p + b % p) % p) * scale;
            a /= p;
            b /= p;
            scale *= p;
        }
        return out;
    }

    Code slow_neg(Code a) const {
        if (n == 1) {
            return a == 0 ? 0 : p - a;
        }
        if (p == 2) {
            return a;
        }
        Code out = 0, scale = 1;
        while (a) {
            out += ((p - a % p) % p) * scale;
            a /= p;
            scale *= p;
        }
        return out;
    }

    Code poly_mul(Code a, Code b) const {
        if (n == 1) {
            return static_cast<Code>(std::uint64_t{a} * b % p);
        }
        Poly pa = poly_from_code(a, p), pb = poly_from_code(b, p);
        if (pa.empty() || pb.empty()) {
            return 0;
        }
        Poly prod(pa.size() + pb.size() - 1, 0);
        for (std::size_t i = 0; i < pa.size(); ++i) {
            for (std::size_t j = 0; j < pb.size(); ++j) {
                prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t{pa[i]} * pb[j]) % p);
            }
        }
        Poly r = poly_mod(std::move(prod), modulus, p);
        Code out = 0;
        for (std::size_t i = r.size(); i-- > 0;) {
            out = out * p + r[i];
        }
        return out;
    }

    void build() {
        // Find a primitive element and fill exp/log.
        exp.assign(q - 1, 0);
        log.assign(q, 0);
        for (Code g = 1; g < q; ++g) {
            Code x = 1;
            std::uint32_t order = 0;
            do {
                exp[order] = x;
                x = poly_mul(x, g);
                ++order;
            } while (x != 1 && order < q - 1);
            if (x == 1 && order == q - 1) {
                break;
            }
        }
        for (std::uint32_t i = 0; i + 1 < q; ++i) {
            log[exp[i]] = i;
        }
        inv_table.assign(q, 0);
        neg_table.assign(q, 0);
        for (Code a = 0; a < q; ++a) {
            neg_table[a] = slow_neg(a);
            if (a != 0) {
                inv_table[a] = exp[(q - 1 - log[a]) % (q - 1)];
            }
        }
        if (q <= 256) {
            add_table.assign(std::size_t{q} * q, 0);
            mul_table.assign(std::size_t{q} * q, 0);
            for (Code a = 0; a < q; ++a) {
                for (Code b = 0; b < q; ++b) {
                    add_table[a * q + b] = static_cast<std::uint16_t>(slow_add(a, b));
                    mul_table[a * q + b] =
                        static_cast<std::uint16_t>(a == 0 || b == 0 ? 0 : exp[(log[a] + log[b]) % (q - 1)]);
                }
            }
        }
    }
};

}  // namespace detail

class Element;

/// GF(p^n) with a fixed irreducible modulus. Cheap to copy; all copies share
/// the same immutable tables.
class Field {
   public:
    static constexpr std::uint32_t max_order = 1u << 16;

    Field() : Field(2) {
    }

    /// An empty modulus selects the default: the monic irreducible of degree n
    /// with the smallest code (for n = 1 this is x).
    explicit Field(std::uint32_t p, std::uint32_t n = 1, std::vector<std::uint32_t> modulus = {}) {
        if (!detail::is_prime(p)) {
            throw FieldError("characteristic " + std::to_string(p) + " is not prime");
        }
        if (n < 1) {
            throw FieldError("extension degree must be at least 1");
        }
        std::uint64_t q = 1;
        for (std::uint32_t i = 0; i < n; ++i) {
            q *= p;
            if (q > max_order) {
                throw FieldError("field order exceeds 2^16");
            }
        }
        auto t = std::make_shared<detail::FieldTables>();
        t->p = p;
        t->n = n;
        t->q = static_cast<std::uint32_t>(q);
        if (modulus.empty()) {
            t->modulus = default_modulus(p, n);
        } else {
            if (modulus.size() != n + 1) {
                throw FieldError("modulus must have n+1 coefficients");
            }
            for (auto c : modulus) {
                if (c >= p) {
                    throw FieldError("modulus coefficient out of range [0,p)");
                }
            }
            if (modulus.back() != 1) {
                throw FieldError("modulus is not monic");
            }
            if (!detail::is_irreducible(modulus, p)) {
                throw FieldError("modulus is reducible over GF(" + std::to_string(p) + ")");
            }
            t->modulus = std::move(modulus);
        }
        t->build();
        tables_ = std::move(t);
    }

    static std::vector<std::uint32_t> default_modulus(std::uint32_t p, std::uint32_t n) {
        if (n == 1) {
            return {0, 1};
        }
        std::uint64_t span = 1;
        for (std::uint32_t i = 0; i < n; ++i) {
            span *= p;
        }
        for (std::uint64_t low = 0; low < span; ++low) {
            detail::Poly f = detail::poly_from_code(low, p);
            f.resize(n + 1, 0);
            f[n] = 1;
            if (f[0] != 0 && detail::is_irreducible(f, p)) {
                return f;
            }
        }
        throw FieldError("no irreducible polynomial found");
    }

    std::uint32_t characteristic() const {
        return tables_->p;
    }
    std::uint32_t degree() const {
        return tables_->n;
    }
    std::uint32_t order() const {
        return tables_->q;
    }
    const std::vector<std::uint32_t> &modulus() const {
        return tables_->modulus;
    }
    bool is_prime_field() const {
        return tables_->n == 1;
    }
    bool contains(Code a) const {
        return a < tables_->q;
    }

    Code add(Code a, Code b) const {
        const auto &t = *tables_;
        if (!t.add_table.empty()) {
            return t.add_table[a * t.q + b];
        }
        return t.slow_add(a, b);
    }
    Code neg(Code a) const {
        return tables_->neg_table[a];
    }
    Code sub(Code a, Code b) const {
        return add(a, neg(b));
    }
    Code mul(Code a, Code b) const {
        const auto &t = *tables_;
        if (!t.mul_table.empty()) {
            return t.mul_table[a * t.q + b];
        }
        if (a == 0 || b == 0) {
            return 0;
        }
        return t.exp[(t.log[a] + t.log[b]) % (t.q - 1)];
    }
    Code inv(Code a) const {
        if (a == 0) {
            throw FieldError("inverse of zero");
        }
        return tables_->inv_table[a];
    }
    Code div(Code a, Code b) const {
        return mul(a, inv(b));
    }
    /// Negative exponents invert first.
    Code pow(Code a, std::int64_t e) const {
        if (e < 0) {
            a = inv(a);
            e = -e;
        }
        if (a == 0) {
            return e == 0 ? 1 : 0;
        }
        const auto &t = *tables_;
        std::uint64_t m = static_cast<std::uint64_t>(e) % (t.q - 1);
        return t.exp[(static_cast<std::uint64_t>(t.log[a]) * m) % (t.q - 1)];
    }

    /// Maps an integer literal into the field. Prime fields reduce mod p (so
    /// -2 is 3 in GF(5)); extension fields accept only codes in [0, q).
    Code from_integer(std::int64_t v) const {
        const auto &t = *tables_;
        if (t.n == 1) {
            std::int64_t r = v % static_cast<std::int64_t>(t.p);
            return static_cast<Code>(r < 0 ? r + t.p : r);
        }
        if (v < 0 || v >= static_cast<std::int64_t>(t.q)) {
            throw FieldError("integer " + std::to_string(v) + " is not an element code of " + name());
        }
        return static_cast<Code>(v);
    }

    Element element(Code code) const;
    std::vector<Element> elements() const;

    /// "GF(8)" style label.
    std::string name() const {
        return "GF(" + std::to_string(order()) + ")";
    }

    /// The `field <p> <n> <c0> ... <cn>` header line.
    std::string header() const {
        std::ostringstream out;
        out << "field " << characteristic() << ' ' << degree();
        for (auto c : modulus()) {
            out << ' ' << c;
        }
        return out.str();
    }

    /// Code rendered as a polynomial in x, e.g. "x^2+1".
    std::string polynomial_string(Code a) const {
        if (a == 0) {
            return "0";
        }
        std::string out;
        auto coeffs = detail::poly_from_code(a, characteristic());
        for (std::size_t i = coeffs.size(); i-- > 0;) {
            if (coeffs[i] == 0) {
                continue;
            }
            if (!out.empty()) {
                out += '+';
            }
            if (i == 0 || coeffs[i] != 1) {
                out += std::to_string(coeffs[i]);
            }
            if (i >= 1) {
                out += 'x';
            }
            if (i >= 2) {
                out += '^' + std::to_string(i);
            }
        }
        return out;
    }

    friend bool operator==(const Field &a, const Field &b) {
        return a.tables_ == b.tables_ || (a.characteristic() == b.characteristic() && a.degree() == b.degree() &&
                                          a.modulus() == b.modulus());
    }

   private:
    std::shared_ptr<const detail::FieldTables> tables_;
};

/// A field element bound to its field. Arithmetic between elements of
/// different fields throws.
class Element {
   public:
    Element(Field field, Code code) : field_(std::move(field)), code_(code) {
        if (!field_.contains(code_)) {
            throw FieldError("code " + std::to_string(code) + " out of range for " + field_.name());
        }
    }

    const Field &field() const {
        return field_;
    }
    Code code() const {
        return code_;
    }
    bool is_zero() const {
        return code_ == 0;
    }

    Element operator+(const Element &o) const {
        same_field(o);
        return {field_, field_.add(code_, o.code_)};
    }
    Element operator-(const Element &o) const {
        same_field(o);
        return {field_, field_.sub(code_, o.code_)};
    }
    Element operator-() const {
        return {field_, field_.neg(code_)};
    }
    Element operator*(const Element &o) const {
        same_field(o);
        return {field_, field_.mul(code_, o.code_)};
    }
    Element operator/(const Element &o) const {
        same_field(o);
        return {field_, field_.div(code_, o.code_)};
    }
    Element inv() const {
        return {field_, field_.inv(code_)};
    }
    Element pow(std::int64_t e) const {
        return {field_, field_.pow(code_, e)};
    }

    friend bool operator==(const Element &a, const Element &b) {
        return a.code_ == b.code_ && a.field_ == b.field_;
    }
    friend std::ostream &operator<<(std::ostream &out, const Element &e) {
        return out << e.code_;
    }

   private:
    void same_field(const Element &o) const {
        if (!(field_ == o.field_)) {
            throw FieldError("operands belong to different fields");
        }
    }

    Field field_;
    Code code_;
};

inline Element Field::element(Code code) const {
    return Element(*this, code);
}

inline std::vector<Element> Field::elements() const {
    std::vector<Element> out;
    out.reserve(order());
    for (Code c = 0; c < order(); ++c) {
        out.emplace_back(*this, c);
    }
    return out;
}

}  // namespace ame
