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

#include <string>
#include <vector>

#include "ame/census.hpp"
#include "ame/factor6.hpp"
#include "ame/factor8.hpp"
#include "ame/graphstate.hpp"
#include "json.hpp"

namespace ame {

using Json = nlohmann::ordered_json;

struct RecordError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

template <typename T>
T require(const Json &j, const char *key) {
    if (!j.is_object() || !j.contains(key)) {
        throw RecordError(std::string("missing field '") + key + "'");
    }
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception &e) {
        throw RecordError(std::string("bad field '") + key + "': " + e.what());
    }
}

}  // namespace detail

inline Json field_to_json(const Field &f) {
    return Json{{"p", f.characteristic()}, {"n", f.degree()}, {"poly", f.modulus()}};
}

inline Field field_from_json(const Json &j) {
    auto poly = j.contains("poly") ? detail::require<std::vector<std::uint32_t>>(j, "poly") : std::vector<std::uint32_t>{};
    return Field(detail::require<std::uint32_t>(j, "p"), detail::require<std::uint32_t>(j, "n"), std::move(poly));
}

inline Json matrix_to_json(const Matrix &m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            row.push_back(m.code(i, j));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Matrix matrix_from_json(const Field &f, const Json &j) {
    if (!j.is_array() || j.empty()) {
        throw RecordError("matrix must be a non-empty array of rows");
    }
    std::size_t cols = 0;
    std::vector<Code> codes;
    for (const auto &row : j) {
        if (!row.is_array() || row.empty() || (cols && row.size() != cols)) {
            throw RecordError("matrix rows must be non-empty arrays of equal length");
        }
        cols = row.size();
        for (const auto &v : row) {
            if (!v.is_number_unsigned()) {
                throw RecordError("matrix entries must be element codes");
            }
            codes.push_back(v.get<Code>());
        }
    }
    return Matrix(f, j.size(), cols, std::move(codes));
}

inline Json decomposition_to_json(const Decomposition6 &d) {
    return Json{{"field", field_to_json(d.source.field())},
                {"G", matrix_to_json(d.source)},
                {"direction", direction_name(d.direction)},
                {"condition_value", d.condition_value},
                {"A", matrix_to_json(d.a)},
                {"B", matrix_to_json(d.b)},
                {"C", matrix_to_json(d.c)},
                {"verified", verify(d)},
                {"gauge", {{"e1", d.e1}, {"e3", d.e3}}}};
}

inline Decomposition6 decomposition6_from_json(const Json &j) {
    Field f = field_from_json(detail::require<Json>(j, "field"));
    auto dir = detail::require<std::string>(j, "direction");
    if (dir != "forward" && dir != "backward") {
        throw RecordError("direction must be 'forward' or 'backward'");
    }
    Decomposition6 d{dir == "forward" ? Direction::forward : Direction::backward,
                     matrix_from_json(f, detail::require<Json>(j, "G")),
                     matrix_from_json(f, detail::require<Json>(j, "A")),
                     matrix_from_json(f, detail::require<Json>(j, "B")),
                     matrix_from_json(f, detail::require<Json>(j, "C"))};
    d.condition_value = detail::require<Code>(j, "condition_value");
    if (j.contains("gauge")) {
        d.e1 = detail::require<Code>(j["gauge"], "e1");
        d.e3 = detail::require<Code>(j["gauge"], "e3");
    }
    return d;
}

inline Json decomposition_to_json(const Decomposition8 &d) {
    Json gates = Json::object();
    for (std::size_t i = 0; i < gate_pairs8.size(); ++i) {
        gates[gate_pairs8[i].key()] = matrix_to_json(d.gates[i]);
    }
    Json conditions = Json::array();
    for (const auto &c : d.conditions.conditions) {
        conditions.push_back({{"name", c.name}, {"value", c.value}, {"holds", c.holds}});
    }
    return Json{{"field", field_to_json(d.source.field())},
                {"G", matrix_to_json(d.source)},
                {"gates", std::move(gates)},
                {"conditions", std::move(conditions)},
                {"verified", verify8(d)}};
}

inline Decomposition8 decomposition8_from_json(const Json &j) {
    Field f = field_from_json(detail::require<Json>(j, "field"));
    Matrix g = matrix_from_json(f, detail::require<Json>(j, "G"));
    const Json &gates = detail::require<Json>(j, "gates");
    auto gate = [&](std::size_t i) { return matrix_from_json(f, detail::require<Json>(gates, gate_pairs8[i].key().c_str())); };
    return Decomposition8{g, {gate(0), gate(1), gate(2), gate(3), gate(4), gate(5)}, conditions8(g)};
}

/// Distinguishes the two decomposition records by their gate keys.
inline bool is_decomposition8_record(const Json &j) {
    return j.is_object() && j.contains("gates");
}

inline Json circuit_to_json(const CircuitPlan &plan) {
    Json gates = Json::array();
    for (const auto &g : plan.gates) {
        Json e{{"kind", gate_kind_name(g.kind)}, {"sites", g.sites}, {"name", g.name}};
        if (g.matrix) {
            e["matrix"] = matrix_to_json(*g.matrix);
        }
        if (g.power) {
            e["power"] = *g.power;
        }
        if (g.droppable()) {
            e["identity"] = true;
        }
        gates.push_back(std::move(e));
    }
    Json out{{"D", plan.dimension}, {"k", plan.sites}};
    if (plan.field) {
        out["field"] = field_to_json(*plan.field);
    }
    out["gates"] = std::move(gates);
    out["gate_count"] = plan.size();
    out["effective_gate_count"] = plan.effective_size();
    return out;
}

inline CircuitPlan circuit_from_json(const Json &j) {
    CircuitPlan plan;
    plan.dimension = detail::require<std::uint32_t>(j, "D");
    plan.sites = detail::require<std::size_t>(j, "k");
    if (j.contains("field")) {
        plan.field = field_from_json(j["field"]);
    }
    for (const auto &e : detail::require<Json>(j, "gates")) {
        CircuitGate g;
        auto kind = detail::require<std::string>(e, "kind");
        if (kind == "bell_pair") {
            g.kind = GateKind::bell_pair;
        } else if (kind == "two_site") {
            g.kind = GateKind::two_site;
        } else if (kind == "controlled_z") {
            g.kind = GateKind::controlled_z;
        } else {
            throw RecordError("unknown gate kind '" + kind + "'");
        }
        g.sites = detail::require<std::array<std::size_t, 2>>(e, "sites");
        for (auto s : g.sites) {
            if (s < 1 || s > plan.sites) {
                throw RecordError("gate site " + std::to_string(s) + " out of range");
            }
        }
        g.name = e.value("name", std::string{});
        if (e.contains("matrix")) {
            if (!plan.field) {
                throw RecordError("gate matrices need a field record");
            }
            g.matrix = matrix_from_json(*plan.field, e["matrix"]);
        }
        if (e.contains("power")) {
            g.power = detail::require<std::uint32_t>(e, "power");
        }
        plan.gates.push_back(std::move(g));
    }
    return plan;
}

inline const char *mode_name(SamplingMode m) {
    return m == SamplingMode::exhaustive ? "exhaustive" : "random";
}

/// Wall-clock time is optional so that repeated runs can produce identical output.
inline Json census_to_json(const CensusResult &r, bool timing = true) {
    Json out{{"field", field_to_json(r.field)},
             {"size", r.size},
             {"mode", mode_name(r.mode)}};
    if (r.mode == SamplingMode::random) {
        out["seed"] = r.seed;
        out["samples"] = r.samples;
    }
    out["total"] = r.counts.total;
    out["superregular"] = r.counts.superregular;
    if (r.factorizability) {
        out["forward"] = r.counts.forward;
        out["backward"] = r.counts.backward;
        out["both"] = r.counts.both;
    }
    if (timing) {
        out["seconds"] = r.seconds;
    }
    return out;
}

inline CensusResult census_from_json(const Json &j) {
    CensusResult r;
    r.field = field_from_json(detail::require<Json>(j, "field"));
    r.size = detail::require<std::size_t>(j, "size");
    auto mode = detail::require<std::string>(j, "mode");
    if (mode != "exhaustive" && mode != "random") {
        throw RecordError("mode must be 'exhaustive' or 'random'");
    }
    r.mode = mode == "exhaustive" ? SamplingMode::exhaustive : SamplingMode::random;
    r.seed = j.value("seed", std::uint64_t{0});
    r.samples = j.value("samples", std::uint64_t{0});
    r.counts.total = detail::require<std::uint64_t>(j, "total");
    r.counts.superregular = detail::require<std::uint64_t>(j, "superregular");
    r.factorizability = j.contains("forward");
    if (r.factorizability) {
        r.counts.forward = detail::require<std::uint64_t>(j, "forward");
        r.counts.backward = detail::require<std::uint64_t>(j, "backward");
        r.counts.both = detail::require<std::uint64_t>(j, "both");
    }
    r.seconds = j.value("seconds", 0.0);
    return r;
}

}  // namespace ame
