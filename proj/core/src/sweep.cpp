#include "dagfair/sweep.hpp"

#include <atomic>
#include <condition_variable>
#include <fstream>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>
#include <unordered_set>

#include "dagfair/errors.hpp"
#include "dagfair/metrics.hpp"
#include "dagfair/simulation.hpp"

namespace dagfair {

namespace {

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
    }
    return out;
}

}  // namespace

SweepSpec parse_sweep(std::istream& in) {
    SweepSpec spec;
    for (const auto& [key, value] : parse_key_values(in)) {
        if (key == "n") {
            spec.n = split_list(value);
        } else if (key == "profile") {
            spec.profile = split_list(value);
        } else if (key == "order") {
            spec.order = split_list(value);
        } else if (key == "fanout") {
            spec.fanout = split_list(value);
        } else if (key == "byzantine" || key == "b") {
            spec.byzantine = split_list(value);
        } else if (key == "repetitions") {
            spec.repetitions = static_cast<std::uint32_t>(std::stoul(value));
        } else if (key == "max_points") {
            spec.max_points = std::stoul(value);
        } else {
            // Checked early so typos fail before any run starts.
            SimConfig probe;
            apply_setting(probe, key, value);
            spec.base.emplace_back(key, value);
        }
    }
    if (spec.repetitions < 1) throw ConfigError("repetitions", "must be >= 1");
    return spec;
}

SweepSpec load_sweep(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("sweep", "cannot open '" + path + "'");
    return parse_sweep(in);
}

std::vector<SweepPoint> expand(const SweepSpec& spec) {
    auto axis = [](const std::vector<std::string>& values) {
        return values.empty() ? std::vector<std::optional<std::string>>{std::nullopt}
                              : std::vector<std::optional<std::string>>(values.begin(), values.end());
    };
    const auto ns = axis(spec.n), profiles = axis(spec.profile), orders = axis(spec.order),
               fanouts = axis(spec.fanout), bs = axis(spec.byzantine);
    const std::size_t total = ns.size() * profiles.size() * orders.size() * fanouts.size() * bs.size() * spec.repetitions;
    if (total > spec.max_points) {
        throw ConfigError("max_points", "grid has " + std::to_string(total) + " points, cap is " +
                                            std::to_string(spec.max_points));
    }
    std::vector<SweepPoint> out;
    for (const auto& n : ns)
        for (const auto& profile : profiles)
            for (const auto& order : orders)
                for (const auto& fanout : fanouts)
                    for (const auto& b : bs)
                        for (std::uint32_t rep = 0; rep < spec.repetitions; ++rep) {
                            SweepPoint point;
                            point.index = out.size();
                            try {
                                SimConfig cfg;
                                for (const auto& [k, v] : spec.base) apply_setting(cfg, k, v);
                                if (n) apply_setting(cfg, "n", *n);
                                if (profile) apply_setting(cfg, "profile", *profile);
                                if (order) apply_setting(cfg, "order", *order);
                                if (fanout) apply_setting(cfg, "fanout", *fanout);
                                if (b) apply_setting(cfg, "byzantine", *b);
                                cfg.seed += rep;
                                validate(cfg);
                                point.config = cfg;
                            } catch (const ConfigError& e) {
                                point.error = e.what();
                            }
                            out.push_back(std::move(point));
                        }
    return out;
}

std::string run_key(const std::string& csv_row) {
    // schema_version plus the config echo columns.
    const std::size_t fields = 1 + metrics::kConfigColumns.size();
    std::size_t pos = 0;
    for (std::size_t i = 0; i < fields; ++i) {
        pos = csv_row.find(',', pos);
        if (pos == std::string::npos) return csv_row;
        ++pos;
    }
    return csv_row.substr(0, pos - 1);
}

SweepOutcome run_sweep(const SweepSpec& spec, const std::string& csv_path, unsigned threads, std::ostream* progress,
                       std::size_t limit) {
    const auto points = expand(spec);
    SweepOutcome outcome;

    std::unordered_set<std::string> done;
    bool has_header = false;
    {
        std::ifstream in(csv_path);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            if (!has_header) {
                if (line != metrics::csv_header()) {
                    throw ConfigError("csv", "existing file '" + csv_path + "' has a different header");
                }
                has_header = true;
                continue;
            }
            done.insert(run_key(line));
        }
    }

    std::vector<std::size_t> todo;
    for (const auto& p : points) {
        if (!p.error.empty()) {
            outcome.failures.push_back("point " + std::to_string(p.index) + ": " + p.error);
            continue;
        }
        const std::string key = run_key(metrics::csv_row(p.config.csv_fields(), 0, {}, {}));
        if (done.contains(key)) {
            ++outcome.skipped;
            continue;
        }
        if (todo.size() < limit) todo.push_back(p.index);
    }

    std::ofstream out(csv_path, std::ios::app);
    if (!out) throw std::runtime_error("cannot open '" + csv_path + "' for writing");
    if (!has_header) out << metrics::csv_header() << '\n' << std::flush;

    std::vector<std::optional<std::string>> rows(todo.size());
    std::vector<std::string> errors(todo.size());
    std::mutex mu;
    std::condition_variable cv;
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (;;) {
            const std::size_t slot = next.fetch_add(1);
            if (slot >= todo.size()) return;
            std::string row;
            std::string error;
            try {
                const RunResult r = run(points[todo[slot]].config);
                row = r.csv_row();
            } catch (const std::exception& e) {
                error = e.what();
            }
            std::lock_guard lock(mu);
            rows[slot] = std::move(row);
            errors[slot] = std::move(error);
            cv.notify_all();
        }
    };
    const unsigned count = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(todo.size())));
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < count && !todo.empty(); ++i) pool.emplace_back(worker);

    // Single writer: rows land in point order whatever the finishing order.
    for (std::size_t slot = 0; slot < todo.size(); ++slot) {
        std::unique_lock lock(mu);
        cv.wait(lock, [&] { return rows[slot].has_value(); });
        if (!errors[slot].empty()) {
            outcome.failures.push_back("point " + std::to_string(todo[slot]) + ": " + errors[slot]);
        } else {
            out << *rows[slot] << '\n' << std::flush;
            ++outcome.written;
        }
        if (progress) *progress << "[" << (slot + 1) << "/" << todo.size() << "] point " << todo[slot] << '\n';
    }
    for (auto& t : pool) t.join();
    return outcome;
}

}  // namespace dagfair
