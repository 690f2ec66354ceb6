#include "fqflow/commands.hpp"

#include <chrono>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "fqflow/charcheck.hpp"
#include "fqflow/error.hpp"
#include "fqflow/flowpoly.hpp"
#include "fqflow/graph.hpp"
#include "fqflow/stable.hpp"

#ifndef FQFLOW_VERSION
#define FQFLOW_VERSION "0.0.0"
#endif

namespace fqflow::cli {

namespace {

using json = nlohmann::ordered_json;

struct RunConfig {
    std::string command;
    std::string graph_name;
    std::string edges_path;
    std::optional<std::uint64_t> q;
    std::optional<std::uint32_t> p;
    std::uint32_t d = 1;
    unsigned threads = 0;
    bool no_reduction = false;
    bool force = false;
    std::string format = "json";
    std::string output;
    std::string suite = "all";
};

struct LoadedGraph {
    std::string id;
    Multigraph graph;
    int loops = 0;
};

LoadedGraph load_graph(const RunConfig& cfg) {
    if (!cfg.graph_name.empty()) return {cfg.graph_name, named_graph(cfg.graph_name), 0};
    auto parsed = read_edge_list_file(cfg.edges_path);
    return {cfg.edges_path, std::move(parsed.graph), parsed.loop_count};
}

Field load_field(const RunConfig& cfg) {
    if (cfg.p) return Field::make(*cfg.p, cfg.d);
    if (cfg.q) return Field::from_order(*cfg.q);
    throw Error(ErrorCode::InvalidArgument, "this command needs --q or --p");
}

// Exact integers go out as JSON numbers when they fit 64 bits, else as strings.
json big(const BigInt& v) {
    if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
        return static_cast<std::int64_t>(v);
    }
    return v.str();
}

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::SearchSpaceTooLarge:
        case ErrorCode::TooLarge:
        case ErrorCode::FieldTooLarge:
        case ErrorCode::DegreeTooLarge:
            return kExitGuard;
        case ErrorCode::OddRankResidue:
        case ErrorCode::NonIntegerResult:
            return kExitMismatch;
        default:
            return kExitUsage;
    }
}

class Reporter {
public:
    Reporter(const RunConfig& cfg, std::ostream& err) : cfg_(cfg), err_(err), start_(Clock::now()) {}

    double elapsed_ms() const {
        return std::chrono::duration<double, std::milli>(Clock::now() - start_).count();
    }

    json envelope(const std::string& graph_id, std::optional<std::uint64_t> q, json results) const {
        json j;
        j["command"] = cfg_.command;
        j["graph"] = graph_id.empty() ? json(nullptr) : json(graph_id);
        j["q"] = q ? json(*q) : json(nullptr);
        j["results"] = std::move(results);
        j["elapsed_ms"] = elapsed_ms();
        j["version"] = FQFLOW_VERSION;
        return j;
    }

    // TSV keeps standard output free of timing so it is reproducible byte for byte.
    void timing_to_stderr(std::optional<double> per_second = std::nullopt) const {
        err_ << "elapsed_ms\t" << elapsed_ms() << "\n";
        if (per_second) err_ << "assignments_per_second\t" << *per_second << "\n";
    }

private:
    using Clock = std::chrono::steady_clock;
    const RunConfig& cfg_;
    std::ostream& err_;
    Clock::time_point start_;
};

int cmd_flow(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    Reporter rep(cfg, err);
    const auto g = load_graph(cfg);
    const IntPolynomial poly = q_minus_one_power(g.loops) * flow_poly(g.graph);
    std::optional<BigInt> value;
    if (cfg.q) value = poly.evaluate(*cfg.q);

    if (cfg.format == "tsv") {
        out << "degree\tcoefficient\n";
        for (int i = 0; i <= poly.degree(); ++i) out << i << "\t" << poly.coeffs()[static_cast<std::size_t>(i)] << "\n";
        if (value) out << "value\t" << *value << "\n";
        rep.timing_to_stderr();
        return kExitOk;
    }
    json coeffs = json::array();
    for (int i = 0; i <= poly.degree(); ++i) coeffs.push_back(big(poly.coeffs()[static_cast<std::size_t>(i)]));
    json results;
    results["coefficients"] = coeffs;
    results["polynomial"] = poly.to_string();
    results["loops"] = g.loops;
    results["value"] = value ? big(*value) : json(nullptr);
    out << rep.envelope(g.id, cfg.q, results).dump(2) << "\n";
    return kExitOk;
}

int cmd_stable(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    Reporter rep(cfg, err);
    const auto g = load_graph(cfg);
    const Field f = load_field(cfg);
    EnumerationOptions opts;
    opts.scaling_reduction = !cfg.no_reduction;
    opts.threads = cfg.threads;
    opts.force = cfg.force;
    const STable t = s_table(g.graph, f, opts, g.id);
    const BigInt loop_factor = ipow(BigInt(f.q() - 1), static_cast<unsigned>(g.loops));
    const BigInt flow = t.flow_value * loop_factor;

    std::optional<BigInt> reference;
    if (g.graph.num_edges() <= 24) reference = flow_poly(g.graph).evaluate(f.q()) * loop_factor;
    const bool match = !reference || *reference == flow;
    const double seconds = rep.elapsed_ms() / 1000.0;
    const double per_second = seconds > 0 ? static_cast<double>(t.assignments_enumerated) / seconds : 0.0;

    if (cfg.format == "tsv") {
        out << "r\tS(r,q)\n";
        for (std::size_t r = 0; r < t.s_values.size(); ++r) out << r << "\t" << t.s_values[r] << "\n";
        out << "flow\t" << flow << "\n";
        rep.timing_to_stderr(per_second);
    } else {
        json s = json::array();
        for (const auto& v : t.s_values) s.push_back(big(v));
        json results;
        results["s_values"] = s;
        results["flow"] = big(flow);
        results["flow_reference"] = reference ? big(*reference) : json(nullptr);
        results["match"] = match;
        results["loops"] = g.loops;
        results["reduced"] = t.reduced;
        results["threads"] = resolve_threads(cfg.threads);
        results["assignments_enumerated"] = t.assignments_enumerated;
        results["assignments_per_second"] = per_second;
        out << rep.envelope(g.id, f.q(), results).dump(2) << "\n";
    }
    if (!match) {
        err << "flow mismatch: alpha-representation gives " << flow << ", deletion-contraction gives " << *reference
            << "\n";
        return kExitMismatch;
    }
    return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    Reporter rep(cfg, err);
    const Field f = load_field(cfg);
    const auto reports = run_suite(cfg.suite, f);
    bool all_passed = true;
    for (const auto& r : reports) all_passed = all_passed && r.passed;

    if (cfg.format == "tsv") {
        out << "check\tinstances\tmax_deviation\ttolerance\tpassed\n";
        for (const auto& r : reports) {
            out << r.name << "\t" << r.instances << "\t" << r.max_deviation << "\t" << r.tolerance << "\t"
                << (r.passed ? "pass" : "FAIL") << "\n";
        }
        rep.timing_to_stderr();
    } else {
        json list = json::array();
        for (const auto& r : reports) {
            list.push_back({{"name", r.name},
                            {"instances", r.instances},
                            {"max_deviation", r.max_deviation},
                            {"tolerance", r.tolerance},
                            {"passed", r.passed}});
        }
        json results;
        results["suite"] = cfg.suite;
        results["checks"] = list;
        results["passed"] = all_passed;
        out << rep.envelope("", f.q(), results).dump(2) << "\n";
    }
    return all_passed ? kExitOk : kExitMismatch;
}

int cmd_ncount(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    Reporter rep(cfg, err);
    const auto g = load_graph(cfg);
    const Field f = load_field(cfg);
    EnumerationOptions opts;
    opts.threads = cfg.threads;
    opts.force = cfg.force;
    // A loop never lies in a spanning tree, so its weight is free: factor q per loop.
    const BigInt count = n_count(g.graph, f, opts) * ipow(BigInt(f.q()), static_cast<unsigned>(g.loops));

    if (cfg.format == "tsv") {
        out << "n_count\t" << count << "\n";
        rep.timing_to_stderr();
    } else {
        json results;
        results["n_count"] = big(count);
        results["loops"] = g.loops;
        out << rep.envelope(g.id, f.q(), results).dump(2) << "\n";
    }
    return kExitOk;
}

void add_graph_options(CLI::App* sub, RunConfig& cfg) {
    auto* name = sub->add_option("--graph", cfg.graph_name, "named graph from the catalog");
    auto* edges = sub->add_option("--edges", cfg.edges_path, "edge-list file, one \"u v\" pair per line")
                      ->check(CLI::ExistingFile);
    name->excludes(edges);
    edges->excludes(name);
}

void add_field_options(CLI::App* sub, RunConfig& cfg, bool required) {
    auto* q = sub->add_option("--q", cfg.q, "field order (odd prime power)");
    auto* p = sub->add_option("--p", cfg.p, "field characteristic (odd prime)");
    auto* d = sub->add_option("--d", cfg.d, "extension degree")->needs(p);
    q->excludes(p);
    p->excludes(q);
    (void)d;
    if (required) {
        auto* group = sub->add_option_group("field");
        group->add_option(q);
        group->add_option(p);
        group->require_option(1);
    }
}

void add_output_options(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "tsv"}));
    sub->add_option("--output", cfg.output, "write the report to this file instead of standard output");
}

void add_enumeration_options(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--threads", cfg.threads, "worker threads (0 = all available)");
    sub->add_flag("--force", cfg.force, "skip the search-space guard");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Flow polynomials over finite fields via weighted Laplacian character sums", "fqflow"};
    app.set_version_flag("--version", FQFLOW_VERSION);
    app.require_subcommand(1);

    auto* flow = app.add_subcommand("flow", "flow polynomial by deletion-contraction");
    add_graph_options(flow, cfg);
    flow->add_option("--q", cfg.q, "evaluate the polynomial at this integer");
    add_output_options(flow, cfg);

    auto* stable = app.add_subcommand("stable", "graded character sums S(r,q) and the flow value they encode");
    add_graph_options(stable, cfg);
    add_field_options(stable, cfg, true);
    add_enumeration_options(stable, cfg);
    stable->add_flag("--no-reduction", cfg.no_reduction, "enumerate every weight instead of one per scaling orbit");
    add_output_options(stable, cfg);

    auto* verify = app.add_subcommand("verify", "brute-force identity checks");
    add_field_options(verify, cfg, true);
    verify->add_option("--suite", cfg.suite, "suite to run")->check(CLI::IsMember(suite_names()));
    add_output_options(verify, cfg);

    auto* ncount = app.add_subcommand("ncount", "number of weightings (zeros allowed) with nonzero tree sum");
    add_graph_options(ncount, cfg);
    add_field_options(ncount, cfg, true);
    add_enumeration_options(ncount, cfg);
    add_output_options(ncount, cfg);

    for (auto* sub : {flow, stable, ncount}) {
        sub->callback([sub] {
            if (sub->count("--graph") + sub->count("--edges") != 1) {
                throw CLI::ValidationError("exactly one of --graph or --edges is required");
            }
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    std::ostringstream buffer;
    int code = kExitOk;
    try {
        if (flow->parsed()) {
            cfg.command = "flow";
            code = cmd_flow(cfg, buffer, err);
        } else if (stable->parsed()) {
            cfg.command = "stable";
            code = cmd_stable(cfg, buffer, err);
        } else if (verify->parsed()) {
            cfg.command = "verify";
            code = cmd_verify(cfg, buffer, err);
        } else {
            cfg.command = "ncount";
            code = cmd_ncount(cfg, buffer, err);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    }

    if (cfg.output.empty()) {
        out << buffer.str();
    } else {
        std::ofstream file(cfg.output);
        if (!(file << buffer.str())) {
            err << "error: cannot write " << cfg.output << "\n";
            return kExitUsage;
        }
    }
    return code;
}

}  // namespace fqflow::cli
