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

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ame/gf.hpp"
#include "ame/matrix.hpp"
#include "ame/oa.hpp"

namespace ame {

struct ParseError : std::runtime_error {
    ParseError(std::size_t line, const std::string &what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {
    }
    std::size_t line;
};

namespace detail {

inline std::string trim_copy(const std::string &s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) {
        return {};
    }
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::int64_t> parse_ints(const std::string &text, std::size_t line, char sep = ' ') {
    std::vector<std::int64_t> out;
    std::string s = text;
    if (sep != ' ') {
        for (auto &ch : s) {
            if (ch == sep) {
                ch = ' ';
            }
        }
    }
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) {
        std::size_t used = 0;
        std::int64_t v = 0;
        try {
            v = std::stoll(tok, &used);
        } catch (const std::exception &) {
            throw ParseError(line, "expected an integer, got '" + tok + "'");
        }
        if (used != tok.size()) {
            throw ParseError(line, "expected an integer, got '" + tok + "'");
        }
        out.push_back(v);
    }
    return out;
}

inline bool starts_with_word(const std::string &s, const std::string &word) {
    return s.rfind(word, 0) == 0 && (s.size() == word.size() || s[word.size()] == ' ' || s[word.size()] == '\t');
}

}  // namespace detail

/// Parses `field <p> <n> [<c0> ... <cn>]`.
inline Field parse_field_header(const std::string &text, std::size_t line = 1) {
    std::string s = detail::trim_copy(text);
    if (!detail::starts_with_word(s, "field")) {
        throw ParseError(line, "expected 'field <p> <n> [<c0> ... <cn>]'");
    }
    auto nums = detail::parse_ints(s.substr(5), line);
    if (nums.size() < 2) {
        throw ParseError(line, "field header needs p and n");
    }
    for (auto v : nums) {
        if (v < 0) {
            throw ParseError(line, "field header values must be non-negative");
        }
    }
    std::vector<std::uint32_t> poly(nums.begin() + 2, nums.end());
    if (!poly.empty() && poly.size() != static_cast<std::size_t>(nums[1]) + 1) {
        throw ParseError(line, "field modulus needs n+1 coefficients");
    }
    try {
        return Field(static_cast<std::uint32_t>(nums[0]), static_cast<std::uint32_t>(nums[1]), std::move(poly));
    } catch (const FieldError &e) {
        throw ParseError(line, e.what());
    }
}

struct ParsedMatrix {
    Matrix matrix;
    bool header_present = false;
    /// A header was present and disagreed with the caller's fallback field.
    bool header_overrode_fallback = false;
};

/// Matrix text format: an optional field header line, `#` comment lines, then
/// one row per line of whitespace-separated integer codes. Negative values are
/// reduced mod p in prime fields. The header wins over `fallback`.
inline ParsedMatrix read_matrix(std::istream &in, const std::optional<Field> &fallback = std::nullopt) {
    std::optional<Field> header;
    std::vector<std::vector<std::int64_t>> rows;
    std::vector<std::size_t> row_lines;
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = detail::trim_copy(raw);
        if (s.empty() || s[0] == '#') {
            continue;
        }
        if (detail::starts_with_word(s, "field")) {
            if (header || !rows.empty()) {
                throw ParseError(line, "field header must come before the rows and appear once");
            }
            header = parse_field_header(s, line);
            continue;
        }
        rows.push_back(detail::parse_ints(s, line));
        row_lines.push_back(line);
        if (rows.back().size() != rows.front().size()) {
            throw ParseError(line, "row has " + std::to_string(rows.back().size()) + " entries, expected " +
                                       std::to_string(rows.front().size()));
        }
    }
    if (!header && !fallback) {
        throw ParseError(line, "no field header and no field given");
    }
    if (rows.empty() || rows.front().empty()) {
        throw ParseError(line, "matrix has no entries");
    }
    const Field &f = header ? *header : *fallback;
    std::vector<Code> codes;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (auto v : rows[r]) {
            if (v < 0 && !f.is_prime_field()) {
                throw ParseError(row_lines[r], "negative entries are only allowed in prime fields");
            }
            if (v >= static_cast<std::int64_t>(f.order())) {
                throw ParseError(row_lines[r], "entry " + std::to_string(v) + " is not an element of " + f.name());
            }
            codes.push_back(f.from_integer(v));
        }
    }
    bool overrode = header && fallback && !(*header == *fallback);
    return ParsedMatrix{Matrix(f, rows.size(), rows.front().size(), std::move(codes)), header.has_value(), overrode};
}

inline ParsedMatrix parse_matrix(const std::string &text, const std::optional<Field> &fallback = std::nullopt) {
    std::istringstream in(text);
    return read_matrix(in, fallback);
}

inline void write_matrix(std::ostream &out, const Matrix &m) {
    out << m.field().header() << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            out << (j ? " " : "") << m.code(i, j);
        }
        out << '\n';
    }
}

inline std::string format_matrix(const Matrix &m) {
    std::ostringstream out;
    write_matrix(out, m);
    return out.str();
}

/// CSV, one array row per line, no header. With a field, a leading
/// `# field ...` comment records the symbol alphabet.
inline void write_oa_csv(std::ostream &out, const OrthogonalArray &arr, const std::optional<Field> &field = std::nullopt) {
    if (field) {
        out << "# " << field->header() << '\n';
    }
    for (std::size_t r = 0; r < arr.rows(); ++r) {
        for (std::size_t c = 0; c < arr.columns(); ++c) {
            out << (c ? "," : "") << arr.at(r, c);
        }
        out << '\n';
    }
}

struct ParsedArray {
    OrthogonalArray array;
    std::optional<Field> field;
};

/// Reads the CSV export. The symbol count comes from a `# field ...` line,
/// else from `symbols`, else from the largest entry plus one.
inline ParsedArray read_oa_csv(std::istream &in, std::optional<std::uint32_t> symbols = std::nullopt) {
    std::optional<Field> field;
    std::vector<std::uint32_t> data;
    std::size_t columns = 0, line = 0;
    std::int64_t largest = -1;
    std::string raw;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = detail::trim_copy(raw);
        if (s.empty()) {
            continue;
        }
        if (s[0] == '#') {
            std::string rest = detail::trim_copy(s.substr(1));
            if (detail::starts_with_word(rest, "field")) {
                field = parse_field_header(rest, line);
            }
            continue;
        }
        auto vals = detail::parse_ints(s, line, ',');
        if (vals.empty()) {
            throw ParseError(line, "empty CSV row");
        }
        if (columns == 0) {
            columns = vals.size();
        } else if (vals.size() != columns) {
            throw ParseError(line, "row has " + std::to_string(vals.size()) + " columns, expected " +
                                       std::to_string(columns));
        }
        for (auto v : vals) {
            if (v < 0) {
                throw ParseError(line, "symbols must be non-negative");
            }
            largest = std::max(largest, v);
            data.push_back(static_cast<std::uint32_t>(v));
        }
    }
    if (columns == 0) {
        throw ParseError(line, "array has no rows");
    }
    std::uint32_t d = std::max<std::uint32_t>(2, static_cast<std::uint32_t>(largest + 1));
    if (field) {
        d = field->order();
    } else if (symbols) {
        d = *symbols;
    }
    if (largest >= static_cast<std::int64_t>(d)) {
        throw ParseError(line, "symbol " + std::to_string(largest) + " exceeds alphabet size " + std::to_string(d));
    }
    return ParsedArray{OrthogonalArray(d, columns, std::move(data)), field};
}

}  // namespace ame
