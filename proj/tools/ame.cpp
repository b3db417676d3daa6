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


// ame: command-line front end. Exit status 0 means the checked property holds,
// 1 means it fails, 2 means a usage or input error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ame/ame.hpp"

namespace {

using namespace ame;

constexpr int kHolds = 0;
constexpr int kFails = 1;
constexpr int kUsage = 2;

/// Input problems that should end the run with exit status 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FieldFlags {
    std::optional<std::uint32_t> p;
    std::uint32_t n = 1;
    std::vector<std::uint32_t> poly;

    void attach(CLI::App *cmd) {
        cmd->add_option("--p", p, "field characteristic");
        cmd->add_option("--n", n, "extension degree")->default_val(1);
        cmd->add_option("--poly", poly, "modulus coefficients c0..cn, constant term first")->delimiter(',');
    }

    std::optional<Field> field() const {
        if (!p) {
            if (!poly.empty() || n != 1) {
                throw UsageError("--n and --poly need --p");
            }
            return std::nullopt;
        }
        try {
            return Field(*p, n, poly);
        } catch (const FieldError &e) {
            throw UsageError(e.what());
        }
    }

    Field require() const {
        auto f = field();
        if (!f) {
            throw UsageError("a field is required: pass --p [--n --poly]");
        }
        return *f;
    }
};

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot read " + path);
    }
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_text(const std::string &path, const std::string &text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw UsageError("cannot write " + path);
    }
    out << text;
}

Matrix load_matrix(const std::string &path, const FieldFlags &flags) {
    auto parsed = parse_matrix(read_file(path), flags.field());
    if (parsed.header_overrode_fallback) {
        std::cerr << "warning: " << path << " declares " << parsed.matrix.field().header()
                  << "; ignoring the field given on the command line\n";
    }
    return parsed.matrix;
}

Json load_json(const std::string &path) {
    try {
        return Json::parse(read_file(path));
    } catch (const nlohmann::json::parse_error &e) {
        throw UsageError(path + ": " + e.what());
    }
}

std::string sites_text(const std::vector<std::size_t> &v) {
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i) {
        s += (i ? "," : "") + std::to_string(v[i]);
    }
    return s + "}";
}

// ---- superregular ---------------------------------------------------------

int cmd_superregular(const std::string &path, const FieldFlags &flags) {
    Matrix g = load_matrix(path, flags);
    if (auto m = first_vanishing_minor(g)) {
        std::cout << "not superregular: " << m->describe() << " vanishes\n";
        return kFails;
    }
    std::cout << "superregular\n";
    return kHolds;
}

// ---- factor6 / factor8 ----------------------------------------------------

int cmd_factor6(const std::string &path, const FieldFlags &flags, const std::string &direction,
                const std::string &out) {
    Matrix g = load_matrix(path, flags);
    if (g.rows() != 3 || g.cols() != 3) {
        throw UsageError("factor6 needs a 3x3 matrix");
    }
    Direction dir = direction == "backward" ? Direction::backward : Direction::forward;
    try {
        auto d = factor(g, dir);
        write_text(out, decomposition_to_json(d).dump(2) + "\n");
        return verify(d) ? kHolds : kFails;
    } catch (const FactorizationError &e) {
        std::cerr << e.what() << '\n';
        return kFails;
    }
}

int cmd_factor8(const std::string &path, const FieldFlags &flags, const std::string &out) {
    Matrix g = load_matrix(path, flags);
    if (g.rows() != 4 || g.cols() != 4) {
        throw UsageError("factor8 needs a 4x4 matrix");
    }
    try {
        auto d = factor8(g);
        write_text(out, decomposition_to_json(d).dump(2) + "\n");
        return verify8(d) ? kHolds : kFails;
    } catch (const ConditionFailedError &e) {
        std::cerr << e.condition.failure << " (condition failed)\n";
        return kFails;
    } catch (const FactorizationError &e) {
        std::cerr << e.what() << '\n';
        return kFails;
    }
}

// ---- yb -------------------------------------------------------------------

int cmd_yb(const FieldFlags &flags, const std::vector<std::int64_t> &params, const std::string &gates_path) {
    std::optional<Matrix> a, b, c;
    std::optional<Field> f;
    if (!gates_path.empty()) {
        Matrix stacked = load_matrix(gates_path, flags);
        if (stacked.rows() != 6 || stacked.cols() != 2) {
            throw UsageError("--gates file must hold A, B, C stacked as a 6x2 matrix");
        }
        auto block = [&](std::size_t r) {
            std::vector<std::size_t> rows{r, r + 1}, cols{0, 1};
            return stacked.submatrix(rows, cols);
        };
        a = block(0);
        b = block(2);
        c = block(4);
        f = stacked.field();
    } else {
        if (params.size() != 8) {
            throw UsageError("yb needs 8 parameters a11 a21 b11 b12 b21 b22 c12 c22, or --gates FILE");
        }
        f = flags.require();
        std::vector<Code> v;
        for (auto x : params) {
            if (x < 0 && !f->is_prime_field()) {
                throw UsageError("negative parameters need a prime field");
            }
            v.push_back(f->from_integer(x));
        }
        try {
            auto t = yb_build(*f, YbParameters{v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7]});
            a = t.a;
            b = t.b;
            c = t.c;
        } catch (const FieldError &e) {
            throw UsageError(e.what());
        }
    }
    bool holds = yb_check(*a, *b, *c);
    Matrix abc = embed6(*a, Slot::A) * embed6(*b, Slot::B) * embed6(*c, Slot::C);
    Matrix cba = embed6(*c, Slot::C) * embed6(*b, Slot::B) * embed6(*a, Slot::A);
    Json out{{"field", field_to_json(*f)},
             {"A", matrix_to_json(*a)},
             {"B", matrix_to_json(*b)},
             {"C", matrix_to_json(*c)},
             {"ABC", matrix_to_json(abc)},
             {"CBA", matrix_to_json(cba)},
             {"yang_baxter", holds},
             {"perfect", is_perfect_gate(*a) && is_perfect_gate(*b) && is_perfect_gate(*c) && all_minors_nonzero(abc)}};
    std::cout << out.dump(2) << '\n';
    return holds ? kHolds : kFails;
}

// ---- oa -------------------------------------------------------------------

DecompositionDirection parse_labels(const std::string &s) {
    if (s == "forward") {
        return DecompositionDirection::forward;
    }
    if (s == "backward") {
        return DecompositionDirection::backward;
    }
    return DecompositionDirection::none;
}

int cmd_oa_build(const std::string &path, const FieldFlags &flags, const std::string &out, bool with_field) {
    Matrix g = load_matrix(path, flags);
    OrthogonalArray arr = [&] {
        try {
            return array_from_matrix(g);
        } catch (const SingularMatrixError &e) {
            throw UsageError(std::string("matrix does not define a bijection: ") + e.what());
        }
    }();
    std::ostringstream csv;
    write_oa_csv(csv, arr, with_field ? std::optional<Field>(g.field()) : std::nullopt);
    write_text(out, csv.str());
    return kHolds;
}

int cmd_oa_verify(const std::string &path, std::optional<std::size_t> declared, std::optional<std::uint32_t> symbols,
                  const std::string &labels) {
    std::istringstream in(read_file(path));
    auto parsed = read_oa_csv(in, symbols);
    const auto &arr = parsed.array;
    std::size_t want = declared.value_or(arr.columns() / 2);
    std::size_t s = strength(arr);
    std::cout << "rows " << arr.rows() << " columns " << arr.columns() << " symbols " << arr.symbols() << '\n';
    std::cout << "strength " << s << '\n';
    if (s < want) {
        for (const auto &cols : failing_subsets(arr, want)) {
            std::vector<std::size_t> one_based;
            for (auto c : cols) {
                one_based.push_back(c + 1);
            }
            std::cout << "not orthogonal: columns " << sites_text(one_based) << '\n';
        }
    }
    if (!labels.empty()) {
        auto report = bipartition_report(arr, parse_labels(labels));
        for (const auto &b : report.bipartitions) {
            std::cout << "bipartition " << sites_text(b.side) << " | " << sites_text(b.complement) << ' '
                      << (b.maximal ? "maximal" : "not maximal") << ' ' << label_name(b.label) << '\n';
        }
    }
    std::cout << (s >= want ? "declared strength " + std::to_string(want) + " holds\n"
                            : "declared strength " + std::to_string(want) + " fails\n");
    return s >= want ? kHolds : kFails;
}

// ---- circuit --------------------------------------------------------------

int cmd_circuit(const std::string &path, const std::string &out) {
    Json rec = load_json(path);
    CircuitPlan plan;
    try {
        plan = is_decomposition8_record(rec) ? tensor_network_circuit(decomposition8_from_json(rec))
                                             : tensor_network_circuit(decomposition6_from_json(rec));
    } catch (const UnverifiedDecompositionError &e) {
        std::cerr << e.what() << '\n';
        return kFails;
    } catch (const RecordError &e) {
        throw UsageError(path + ": " + e.what());
    }
    write_text(out, circuit_to_json(plan).dump(2) + "\n");
    std::cerr << "gate total " << plan.size() << '\n';
    for (const auto &g : plan.gates) {
        if (g.droppable()) {
            std::cerr << "gate " << g.name << " on " << g.sites[0] << "," << g.sites[1] << " is the identity\n";
        }
    }
    if (plan.effective_size() != plan.size()) {
        std::cerr << "effective gate total " << plan.effective_size() << '\n';
    }
    return kHolds;
}

// ---- graphstate -----------------------------------------------------------

int cmd_graphstate(const std::string &path, const FieldFlags &flags, bool block, bool property1, bool count,
                   bool uniformity, double tolerance, const std::string &circuit_out) {
    Matrix m = load_matrix(path, flags);
    IncidenceMatrix l = [&] {
        try {
            return block ? block_incidence(m) : IncidenceMatrix(m);
        } catch (const std::invalid_argument &e) {
            throw UsageError(e.what());
        }
    }();
    int status = kHolds;
    if (property1) {
        if (auto v = property1_violation(l)) {
            std::cout << "property 1 fails: " << v->describe() << " vanishes\n";
            status = kFails;
        } else {
            std::cout << "property 1 holds\n";
        }
    }
    if (count) {
        std::cout << "gate count " << gate_count(l) << '\n';
    }
    if (uniformity) {
        auto report = uniformity_check(build_graph_state(l), tolerance);
        for (const auto &e : report.entries) {
            std::cout << "bipartition " << sites_text(e.side) << " deviation " << e.deviation << ' '
                      << (e.pass ? "pass" : "fail") << '\n';
        }
        std::cout << (report.all_pass() ? "uniform\n" : "not uniform\n");
        if (!report.all_pass()) {
            status = kFails;
        }
    }
    if (!circuit_out.empty()) {
        write_text(circuit_out, circuit_to_json(graph_state_circuit(l)).dump(2) + "\n");
    }
    return status;
}

// ---- census ---------------------------------------------------------------

struct CensusFlags {
    std::size_t size = 3;
    std::string mode = "exhaustive";
    std::uint64_t samples = 0;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> threads;
    std::string checkpoint;
    bool factorizable = false;
    bool column_major = false;
    bool timing = false;
    std::optional<std::size_t> minor;
};

unsigned resolve_threads(const std::optional<unsigned> &flag) {
    if (flag) {
        return *flag;
    }
    if (const char *env = std::getenv("THREADS")) {
        try {
            return static_cast<unsigned>(std::stoul(env));
        } catch (const std::exception &) {
            throw UsageError(std::string("THREADS must be a positive integer, got '") + env + "'");
        }
    }
    return 1;
}

int cmd_census(const FieldFlags &flags, const CensusFlags &c) {
    Field f = flags.require();
    unsigned threads = resolve_threads(c.threads);
    if (threads == 0) {
        throw UsageError("thread count must be positive");
    }
    if (c.minor) {
        if (!c.seed) {
            throw UsageError("--minor needs --seed");
        }
        MinorEstimate e;
        try {
            e = minor_singularity_estimate(f, *c.minor, c.samples, *c.seed);
        } catch (const std::exception &ex) {
            throw UsageError(ex.what());
        }
        Json out{{"field", field_to_json(f)}, {"minor", e.size},      {"samples", e.samples},
                 {"seed", *c.seed},           {"singular", e.singular}, {"empirical", e.empirical},
                 {"closed_form", e.closed_form}, {"abs_difference", e.abs_difference}, {"sigma", e.sigma},
                 {"within_3_sigma", e.within_sigmas(3.0)}};
        std::cout << out.dump() << '\n';
        return e.within_sigmas(3.0) ? kHolds : kFails;
    }
    CensusConfig cfg;
    cfg.field = f;
    cfg.size = c.size;
    if (c.mode == "random") {
        if (!c.seed || c.samples == 0) {
            throw UsageError("random mode needs --seed and --samples");
        }
        cfg.mode = SamplingMode::random;
        cfg.samples = c.samples;
        cfg.seed = *c.seed;
    }
    cfg.factorizability = c.factorizable;
    cfg.threads = threads;
    cfg.column_major = c.column_major;
    if (!c.checkpoint.empty()) {
        cfg.checkpoint = c.checkpoint;
    }
    CensusResult r;
    try {
        r = run_census(cfg);
    } catch (const SearchSpaceTooLargeError &e) {
        throw UsageError(e.what());
    } catch (const DimensionError &e) {
        throw UsageError(e.what());
    }
    std::cout << census_to_json(r, c.timing).dump() << '\n';
    return kHolds;
}

// ---- field-table ----------------------------------------------------------

int cmd_field_table(const FieldFlags &flags) {
    Field f = flags.require();
    std::uint32_t q = f.order();
    std::cout << f.header() << '\n';
    for (Code a = 0; a < q; ++a) {
        std::cout << a << " = " << f.polynomial_string(a) << '\n';
    }
    auto table = [&](const char *title, auto op) {
        std::cout << title << '\n';
        for (Code a = 0; a < q; ++a) {
            for (Code b = 0; b < q; ++b) {
                std::cout << (b ? " " : "") << op(a, b);
            }
            std::cout << '\n';
        }
    };
    table("add", [&](Code a, Code b) { return f.add(a, b); });
    table("mul", [&](Code a, Code b) { return f.mul(a, b); });
    return kHolds;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Superregular matrices, perfect tensors and AME state circuits over finite fields"};
    app.require_subcommand(1);

    FieldFlags field;
    std::string input, output, direction = "forward", gates_path, labels;

    auto *sr = app.add_subcommand("superregular", "check that every minor is nonzero");
    sr->add_option("matrix", input, "matrix file")->required();
    field.attach(sr);

    auto *f6 = app.add_subcommand("factor6", "factor a 3x3 matrix into three two-site gates");
    f6->add_option("matrix", input, "matrix file")->required();
    f6->add_option("--direction", direction, "forward or backward")->check(CLI::IsMember({"forward", "backward"}));
    f6->add_option("--json", output, "write the decomposition record here instead of stdout");
    field.attach(f6);

    auto *f8 = app.add_subcommand("factor8", "factor a 4x4 matrix into six two-site gates");
    f8->add_option("matrix", input, "matrix file")->required();
    f8->add_option("--json", output, "write the decomposition record here instead of stdout");
    field.attach(f8);

    std::vector<std::int64_t> yb_params;
    auto *yb = app.add_subcommand("yb", "build or check a Yang-Baxter gate triple");
    yb->add_option("params", yb_params, "a11 a21 b11 b12 b21 b22 c12 c22");
    yb->add_option("--gates", gates_path, "file with A, B, C stacked as a 6x2 matrix");
    field.attach(yb);

    auto *oa = app.add_subcommand("oa", "orthogonal arrays");
    oa->require_subcommand(1);
    auto *oa_build = oa->add_subcommand("build", "write the array of a matrix as CSV");
    oa_build->add_option("matrix", input, "matrix file")->required();
    oa_build->add_option("-o,--out", output, "output CSV (default stdout)");
    field.attach(oa_build);
    auto *oa_export = oa->add_subcommand("export", "like build, with a '# field' line for re-import");
    oa_export->add_option("matrix", input, "matrix file")->required();
    oa_export->add_option("-o,--out", output, "output CSV (default stdout)");
    field.attach(oa_export);
    std::optional<std::size_t> declared;
    std::optional<std::uint32_t> symbols;
    auto *oa_verify = oa->add_subcommand("verify", "report strength and failing column subsets");
    oa_verify->add_option("csv", input, "array CSV")->required();
    oa_verify->add_option("--strength", declared, "declared strength (default columns/2)");
    oa_verify->add_option("--symbols", symbols, "alphabet size when the CSV has no field line");
    oa_verify->add_option("--bipartitions", labels, "list balanced bipartitions, labelled for a forward or backward network")
        ->check(CLI::IsMember({"forward", "backward", "none"}));

    auto *circ = app.add_subcommand("circuit", "turn a decomposition record into a gate list");
    circ->add_option("record", input, "decomposition JSON")->required();
    circ->add_option("-o,--out", output, "output JSON (default stdout)");

    bool block = false, property1 = false, count = false, uniformity = false;
    double tolerance = 1e-9;
    auto *gs = app.add_subcommand("graphstate", "qudit graph states from an incidence matrix");
    gs->add_option("matrix", input, "incidence matrix file, or G with --block")->required();
    gs->add_flag("--block", block, "treat the file as G and use L = [[0,G^T],[G,0]]");
    gs->add_flag("--check-property1", property1, "every balanced minor of L is nonzero");
    gs->add_flag("--gate-count", count, "number of controlled-Z gates");
    gs->add_flag("--verify-uniformity", uniformity, "numeric reduced density matrices");
    gs->add_option("--tol", tolerance, "uniformity tolerance")->default_val(1e-9);
    gs->add_option("--circuit", output, "write the controlled-Z gate list as JSON");
    field.attach(gs);

    CensusFlags census;
    auto *cen = app.add_subcommand("census", "count superregular and factorizable matrices");
    field.attach(cen);
    cen->add_option("--size", census.size, "matrix size")->default_val(3);
    cen->add_option("--mode", census.mode, "exhaustive or random")->check(CLI::IsMember({"exhaustive", "random"}));
    cen->add_option("--samples", census.samples, "random samples");
    cen->add_option("--seed", census.seed, "random seed");
    cen->add_option("--threads", census.threads, "worker threads (default $THREADS or 1)");
    cen->add_option("--checkpoint", census.checkpoint, "resume from and record progress in this file");
    cen->add_flag("--factorizable", census.factorizable, "also count nonzero forward/backward conditions");
    cen->add_flag("--column-major", census.column_major, "enumerate entries column by column");
    cen->add_flag("--timing", census.timing, "include wall-clock seconds in the output");
    cen->add_option("--minor", census.minor, "estimate the singular fraction of random c x c matrices");

    auto *ft = app.add_subcommand("field-table", "print element names and the addition and multiplication tables");
    field.attach(ft);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (sr->parsed()) {
            return cmd_superregular(input, field);
        }
        if (f6->parsed()) {
            return cmd_factor6(input, field, direction, output);
        }
        if (f8->parsed()) {
            return cmd_factor8(input, field, output);
        }
        if (yb->parsed()) {
            return cmd_yb(field, yb_params, gates_path);
        }
        if (oa_build->parsed() || oa_export->parsed()) {
            return cmd_oa_build(input, field, output, oa_export->parsed());
        }
        if (oa_verify->parsed()) {
            return cmd_oa_verify(input, declared, symbols, labels);
        }
        if (circ->parsed()) {
            return cmd_circuit(input, output);
        }
        if (gs->parsed()) {
            if (!property1 && !count && !uniformity && output.empty()) {
                throw UsageError("graphstate needs --check-property1, --gate-count, --verify-uniformity or --circuit");
            }
            return cmd_graphstate(input, field, block, property1, count, uniformity, tolerance, output);
        }
        if (cen->parsed()) {
            return cmd_census(field, census);
        }
        if (ft->parsed()) {
            return cmd_field_table(field);
        }
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const ParseError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
