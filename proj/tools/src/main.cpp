#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dagfair/dot_export.hpp"
#include "dagfair/errors.hpp"
#include "dagfair/event_log.hpp"
#include "dagfair/fixtures.hpp"
#include "dagfair/metrics.hpp"
#include "dagfair/probes.hpp"
#include "dagfair/simulation.hpp"
#include "dagfair/sweep.hpp"

namespace fs = std::filesystem;
using namespace dagfair;

namespace {

constexpr int kOk = 0;
constexpr int kValidation = 1;
constexpr int kRuntime = 2;

// Flag name and the config key it sets.
const std::vector<std::pair<std::string, std::string>> kConfigFlags{
    {"n", "n"},
    {"byzantine", "byzantine"},
    {"clients", "clients"},
    {"puzzles", "puzzles"},
    {"order", "order"},
    {"profile", "profile"},
    {"fanout", "fanout"},
    {"third-party-rate", "third_party_rate"},
    {"pariah-depth", "pariah_depth"},
    {"target-client", "target_client"},
    {"taint-scope", "taint_scope"},
    {"seed", "seed"},
    {"tick-ceiling", "tick_ceiling"},
    {"output-dir", "output_dir"},
};

struct ConfigArgs {
    std::string path;
    std::vector<std::string> sets;
    std::map<std::string, std::string> flags;

    void attach(CLI::App* app) {
        app->add_option("-c,--config", path, "key = value config file");
        app->add_option("--set", sets, "extra key=value override (repeatable)");
        for (const auto& [flag, key] : kConfigFlags) {
            app->add_option("--" + flag, flags[flag], "sets '" + key + "'");
        }
    }

    SimConfig build(const CLI::App* app) const {
        SimConfig cfg = path.empty() ? SimConfig{} : load_config(path);
        for (const auto& [flag, key] : kConfigFlags) {
            if (app->count("--" + flag) > 0) apply_setting(cfg, key, flags.at(flag));
        }
        for (const auto& kv : sets) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) throw ConfigError("set", "expected key=value, got '" + kv + "'");
            apply_setting(cfg, kv.substr(0, eq), kv.substr(eq + 1));
        }
        validate(cfg);
        return cfg;
    }
};

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << text;
}

nlohmann::ordered_json stats_json(const metrics::RunStats& s) {
    return {{"duplications", s.duplications},
            {"vertices", s.vertices},
            {"brb_init", s.brb_init},
            {"brb_echo", s.brb_echo},
            {"brb_ready", s.brb_ready},
            {"brb_suppressed", s.brb_suppressed},
            {"final_tick", s.final_tick},
            {"events", s.events},
            {"undrained", s.undrained},
            {"partial", s.partial},
            {"consistent", s.consistent},
            {"structural_violations", s.structural_violations},
            {"brb_violations", s.brb_violations}};
}

void print_audit(const metrics::Audit& a, std::ostream& out) {
    out << "decided " << a.decided << " waves " << a.waves << " pairs " << a.pairs << '\n';
    for (std::size_t c = 0; c < a.scores.size(); ++c) {
        out << "client " << c << " wins " << a.wins[c] << " score " << metrics::format_double(a.scores[c]) << '\n';
    }
    for (auto alpha : metrics::kAlphas) {
        for (auto beta : metrics::kBetas) {
            out << "of_" << metrics::tag(alpha) << '_' << metrics::tag(beta) << ' ' << a.violation(alpha, beta) << '\n';
        }
    }
}

int cmd_run(const SimConfig& cfg, bool quiet) {
    const auto t0 = std::chrono::steady_clock::now();
    const RunResult r = run(cfg);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const fs::path dir = cfg.output_dir;
    fs::create_directories(dir);
    write_file(dir / "metrics.csv", metrics::csv_header() + "\n" + r.csv_row() + "\n");
    {
        std::ofstream out(dir / "events.jsonl", std::ios::binary);
        if (!out) throw std::runtime_error("cannot write events.jsonl");
        log::write_jsonl(out, r.log);
    }
    for (NodeId i = 0; i < r.nodes.size(); ++i) {
        write_file(dir / ("node-" + std::to_string(i) + ".dot"),
                   export_dot(r.nodes[i].store, r.nodes[i].leaders, "node" + std::to_string(i)));
    }
    nlohmann::ordered_json meta{{"config", cfg.to_text()},
                                {"n", cfg.n},
                                {"clients", cfg.clients},
                                {"puzzles", cfg.puzzles},
                                {"reference", r.reference},
                                {"stats", stats_json(r.stats)},
                                {"violations", r.violations}};
    write_file(dir / "run.json", meta.dump(2) + "\n");

    if (!quiet) {
        print_audit(r.audit, std::cout);
        std::cout << "events " << r.log.size() << " final_tick " << r.stats.final_tick
                  << (r.stats.partial ? " partial" : "") << " wall " << metrics::format_double(secs) << "s\n";
        std::cout << "wrote " << dir.string() << "/{metrics.csv,events.jsonl,run.json,node-*.dot}\n";
    }
    for (const auto& v : r.violations) std::cerr << "invariant: " << v << '\n';
    return r.violations.empty() ? kOk : kRuntime;
}

int cmd_audit(const std::string& log_path, std::optional<std::string> meta_path, const metrics::AuditParams& overrides,
              bool have_overrides) {
    metrics::AuditParams params = overrides;
    if (!have_overrides) {
        const fs::path meta = meta_path ? fs::path(*meta_path) : fs::path(log_path).parent_path() / "run.json";
        std::ifstream in(meta);
        if (!in) throw ConfigError("meta", "no '" + meta.string() + "'; pass --meta or --n/--clients/--puzzles");
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(in);
            params.n = j.at("n").get<std::uint32_t>();
            params.clients = j.at("clients").get<std::uint32_t>();
            params.puzzles = j.at("puzzles").get<std::uint32_t>();
            params.reference = j.value("reference", 0u);
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError("meta", e.what());
        }
    }
    std::ifstream in(log_path, std::ios::binary);
    if (!in) throw ConfigError("log", "cannot open '" + log_path + "'");
    const auto records = log::read_jsonl(in);
    print_audit(metrics::audit(records, params), std::cout);
    return kOk;
}

int cmd_export_fixture(const std::string& name, std::ostream& out) {
    static const std::map<std::string, fixtures::Fixture (*)()> table{
        {"example-wave", &fixtures::example_wave},     {"condorcet-cycle", &fixtures::condorcet_cycle},
        {"stalled-row", &fixtures::stalled_row},       {"pariah-three", &fixtures::pariah_three_nodes},
        {"pariah-seven", &fixtures::pariah_seven_nodes}};
    const auto it = table.find(name);
    if (it == table.end()) throw ConfigError("fixture", "unknown fixture '" + name + "'");
    const auto fx = it->second();
    DotOptions options;
    options.name = "fixture";
    out << export_dot(fx.pointers(), options);
    return kOk;
}

int cmd_probe(const std::string& which, std::uint64_t trials, std::uint64_t seed) {
    bool ok = true;
    if (which == "bracha" || which == "all") {
        const auto rows = probes::bracha_sabotage(25, 8, {0, 4, 8}, {0.2, 0.5, 0.8, 0.9, 1.0}, trials, seed);
        std::cout << "b,x,analytic_y,analytic_z,empirical_z\n";
        for (const auto& r : rows) {
            std::cout << r.b << ',' << metrics::format_double(r.x) << ',' << metrics::format_double(r.analytic_y) << ','
                      << metrics::format_double(r.analytic_z) << ',' << metrics::format_double(r.empirical_z) << '\n';
        }
    }
    if (which == "weak-edge" || which == "all") {
        const auto r = probes::weak_edge_scenario(seed);
        std::cout << "weak-edge orphans " << r.orphans << " weak " << r.weak_edges.size() << " cap " << r.cap
                  << (r.pass ? " PASS" : " FAIL") << '\n';
        ok = ok && r.pass;
    }
    if (which == "fixtures" || which == "all") {
        const auto r = probes::vote_table_fixtures();
        std::cout << "fixtures example_table " << r.example_table << " cycle_table " << r.cycle_table
                  << " cycle_scc " << r.cycle_scc_size << (r.pass ? " PASS" : " FAIL") << '\n';
        ok = ok && r.pass;
    }
    return ok ? kOk : kRuntime;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"DagRider order-fairness simulator"};
    app.require_subcommand(1);

    auto* run_cmd = app.add_subcommand("run", "run one simulation and write its artifacts");
    ConfigArgs run_args;
    bool quiet = false;
    run_args.attach(run_cmd);
    run_cmd->add_flag("-q,--quiet", quiet);

    auto* sweep_cmd = app.add_subcommand("sweep", "run a parameter grid into one CSV");
    std::string spec_path, sweep_out = "sweep.csv";
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    sweep_cmd->add_option("spec", spec_path, "sweep spec file")->required();
    sweep_cmd->add_option("-o,--out", sweep_out, "CSV to create or resume");
    sweep_cmd->add_option("-j,--jobs", jobs, "worker threads");

    auto* audit_cmd = app.add_subcommand("audit", "recompute fairness metrics from a JSONL log");
    std::string log_path;
    std::optional<std::string> meta_path;
    metrics::AuditParams audit_params;
    audit_cmd->add_option("log", log_path, "events.jsonl")->required();
    audit_cmd->add_option("--meta", meta_path, "run.json sidecar (default: next to the log)");
    auto* n_opt = audit_cmd->add_option("--n", audit_params.n);
    audit_cmd->add_option("--clients", audit_params.clients)->needs(n_opt);
    audit_cmd->add_option("--puzzles", audit_params.puzzles)->needs(n_opt);
    audit_cmd->add_option("--reference", audit_params.reference);

    auto* dot_cmd = app.add_subcommand("export-dot", "DOT of one node's final DAG, or of a built-in fixture");
    ConfigArgs dot_args;
    dot_args.attach(dot_cmd);
    NodeId dot_node = 0;
    std::string dot_fixture, dot_out;
    dot_cmd->add_option("--node", dot_node, "node whose DAG to export");
    dot_cmd->add_option("--fixture", dot_fixture,
                        "example-wave | condorcet-cycle | stalled-row | pariah-three | pariah-seven");
    dot_cmd->add_option("-o,--out", dot_out, "output file (default stdout)");

    auto* probe_cmd = app.add_subcommand("probe", "standalone checks of the worked examples");
    std::string probe_which = "all";
    std::uint64_t probe_trials = 100000, probe_seed = 1;
    probe_cmd->add_option("which", probe_which)->check(CLI::IsMember({"all", "bracha", "weak-edge", "fixtures"}));
    probe_cmd->add_option("--trials", probe_trials);
    probe_cmd->add_option("--seed", probe_seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kValidation;
    }

    try {
        if (*run_cmd) return cmd_run(run_args.build(run_cmd), quiet);
        if (*sweep_cmd) {
            const auto spec = load_sweep(spec_path);
            const auto outcome = run_sweep(spec, sweep_out, jobs, &std::cerr);
            for (const auto& f : outcome.failures) std::cerr << "failed " << f << '\n';
            std::cout << "written " << outcome.written << " skipped " << outcome.skipped << " failed "
                      << outcome.failures.size() << '\n';
            return outcome.failures.empty() ? kOk : kRuntime;
        }
        if (*audit_cmd) return cmd_audit(log_path, meta_path, audit_params, audit_cmd->count("--n") > 0);
        if (*dot_cmd) {
            std::ostringstream text;
            if (!dot_fixture.empty()) {
                cmd_export_fixture(dot_fixture, text);
            } else {
                const SimConfig cfg = dot_args.build(dot_cmd);
                if (dot_node >= cfg.n) throw ConfigError("node", "must be < n");
                const RunResult r = run(cfg);
                text << export_dot(r.nodes[dot_node].store, r.nodes[dot_node].leaders,
                                   "node" + std::to_string(dot_node));
            }
            if (dot_out.empty()) {
                std::cout << text.str();
            } else {
                write_file(dot_out, text.str());
            }
            return kOk;
        }
        if (*probe_cmd) return cmd_probe(probe_which, probe_trials, probe_seed);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRuntime;
    }
    return kOk;
}
