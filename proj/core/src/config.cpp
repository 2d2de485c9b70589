#include "dagfair/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "dagfair/errors.hpp"
#include "dagfair/metrics.hpp"
#include "dagfair/workload.hpp"

namespace dagfair {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <class T>
T parse_unsigned(const std::string& key, const std::string& value) {
    T out{};
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw ConfigError(key, "expected a non-negative integer, got '" + value + "'");
    }
    return out;
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double out = std::stod(value, &used);
        if (used != value.size() || !std::isfinite(out)) throw std::invalid_argument(value);
        return out;
    } catch (const std::exception&) {
        throw ConfigError(key, "expected a number, got '" + value + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw ConfigError(key, "expected true or false, got '" + value + "'");
}

}  // namespace

void apply_setting(SimConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "n") {
        cfg.n = parse_unsigned<std::uint32_t>(key, value);
        cfg.f = cfg.n >= 1 ? (cfg.n - 1) / 3 : 0;
    } else if (key == "f") {
        cfg.f = parse_unsigned<std::uint32_t>(key, value);
        cfg.n = 3 * cfg.f + 1;
    } else if (key == "byzantine" || key == "b") {
        cfg.byzantine = parse_unsigned<std::uint32_t>(key, value);
    } else if (key == "clients" || key == "m") {
        cfg.clients = parse_unsigned<std::uint32_t>(key, value);
    } else if (key == "puzzles" || key == "p") {
        cfg.puzzles = parse_unsigned<std::uint32_t>(key, value);
    } else if (key == "order") {
        cfg.order = order::parse_policy(value);
    } else if (key == "profile") {
        cfg.profile = parse_profile(value);
    } else if (key == "fanout") {
        cfg.fanout_spec = value;
    } else if (key == "third_party_rate") {
        cfg.third_party_rate = parse_double(key, value);
    } else if (key == "pariah_depth") {
        cfg.pariah_depth = parse_unsigned<std::uint32_t>(key, value);
    } else if (key == "target_client") {
        cfg.target_client = parse_unsigned<ClientId>(key, value);
    } else if (key == "taint_scope") {
        cfg.taint_scope = adv::parse_taint_scope(value);
    } else if (key == "seed") {
        cfg.seed = parse_unsigned<std::uint64_t>(key, value);
    } else if (key == "tick_ceiling") {
        cfg.tick_ceiling = parse_unsigned<Tick>(key, value);
    } else if (key == "puzzle_period") {
        cfg.puzzle_period = parse_unsigned<Tick>(key, value);
    } else if (key == "solve_mean") {
        cfg.solve_mean = parse_double(key, value);
    } else if (key == "client_delay_mean") {
        cfg.client_delay_mean = parse_double(key, value);
    } else if (key == "log_third_party") {
        cfg.log_third_party = parse_bool(key, value);
    } else if (key == "output_dir") {
        cfg.output_dir = value;
    } else {
        throw ConfigError(key, "unknown configuration key");
    }
}

void validate(SimConfig& cfg) {
    if (cfg.n != 3 * cfg.f + 1) {
        throw ConfigError("n", "n must equal 3f+1 (got n=" + std::to_string(cfg.n) + ", f=" + std::to_string(cfg.f) + ")");
    }
    if (cfg.f < 1) throw ConfigError("f", "f must be at least 1");
    if (cfg.n > NodeSet::kCapacity) throw ConfigError("n", "at most 64 nodes are supported");
    if (cfg.byzantine > cfg.f) {
        throw ConfigError("byzantine", "b=" + std::to_string(cfg.byzantine) + " exceeds f=" + std::to_string(cfg.f));
    }
    if (cfg.clients < 2) throw ConfigError("clients", "at least 2 clients are required");
    if (cfg.puzzles < 1) throw ConfigError("puzzles", "at least 1 puzzle is required");
    if (cfg.target_client >= cfg.clients) throw ConfigError("target_client", "target client must be < clients");
    if (cfg.third_party_rate < 0.0) throw ConfigError("third_party_rate", "rate must be >= 0");
    if (cfg.puzzle_period < 1) throw ConfigError("puzzle_period", "period must be >= 1");
    if (!(cfg.solve_mean > 0.0)) throw ConfigError("solve_mean", "mean must be > 0");
    if (!(cfg.client_delay_mean > 0.0)) throw ConfigError("client_delay_mean", "mean must be > 0");
    cfg.fanout = workload::parse_fanout(cfg.fanout_spec, cfg.f, cfg.n);
}

SimConfig parse_config(std::istream& in) {
    SimConfig cfg;
    for (const auto& [key, value] : parse_key_values(in)) apply_setting(cfg, key, value);
    validate(cfg);
    return cfg;
}

SimConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot open '" + path + "'");
    return parse_config(in);
}

std::vector<std::pair<std::string, std::string>> parse_key_values(std::istream& in) {
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(number), "expected 'key = value'");
        }
        out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return out;
}

std::vector<std::string> SimConfig::csv_fields() const {
    return {std::to_string(seed),
            std::to_string(n),
            std::to_string(f),
            std::to_string(byzantine),
            std::to_string(clients),
            std::to_string(puzzles),
            std::string(order::to_string(order)),
            std::string(to_string(profile)),
            std::to_string(fanout),
            metrics::format_double(third_party_rate),
            std::to_string(pariah_depth),
            std::to_string(target_client),
            std::string(adv::to_string(taint_scope)),
            std::to_string(effective_tick_ceiling()),
            std::to_string(puzzle_period),
            metrics::format_double(solve_mean),
            metrics::format_double(client_delay_mean)};
}

std::string SimConfig::to_text() const {
    std::ostringstream out;
    const auto fields = csv_fields();
    for (std::size_t i = 0; i < fields.size(); ++i) {
        out << metrics::kConfigColumns[i] << " = " << fields[i] << '\n';
    }
    out << "log_third_party = " << (log_third_party ? "true" : "false") << '\n';
    return out.str();
}

}  // namespace dagfair
