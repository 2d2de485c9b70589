#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "dagfair/config.hpp"

namespace dagfair {

/// A cartesian experiment grid over a base config.
struct SweepSpec {
    std::vector<std::pair<std::string, std::string>> base;
    std::vector<std::string> n;
    std::vector<std::string> profile;
    std::vector<std::string> order;
    std::vector<std::string> fanout;
    std::vector<std::string> byzantine;
    std::uint32_t repetitions = 1;
    std::size_t max_points = 10000;
};

/// Same key = value format as a run config; the keys n, profile, order,
/// fanout and byzantine take comma-separated lists, plus `repetitions` and
/// `max_points`.
SweepSpec parse_sweep(std::istream& in);
SweepSpec load_sweep(const std::string& path);

struct SweepPoint {
    std::size_t index = 0;
    SimConfig config;
    /// Non-empty when the point failed validation.
    std::string error;
};

/// Expands the grid in the order n, profile, order, fanout, byzantine,
/// repetition; repetition r uses seed + r. Throws ConfigError when the grid
/// exceeds max_points.
std::vector<SweepPoint> expand(const SweepSpec& spec);

/// Config echo part of a CSV row; rows with equal keys describe the same run.
std::string run_key(const std::string& csv_row);

struct SweepOutcome {
    std::size_t written = 0;
    std::size_t skipped = 0;
    std::vector<std::string> failures;
};

/// Runs every point not already present in `csv_path`, on `threads`
/// workers, appending rows in point order through one writer. Stops after
/// `limit` new rows (used to simulate interruption). Failures are reported
/// per point and the sweep continues.
SweepOutcome run_sweep(const SweepSpec& spec, const std::string& csv_path, unsigned threads,
                       std::ostream* progress = nullptr, std::size_t limit = static_cast<std::size_t>(-1));

}  // namespace dagfair
