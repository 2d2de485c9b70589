#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dagfair/event_log.hpp"
#include "dagfair/types.hpp"

namespace dagfair::metrics {

enum class Alpha : std::uint8_t { send, receive, initiate, deliver };
enum class Beta : std::uint8_t { finalize, wave };

inline constexpr std::array<Alpha, 4> kAlphas{Alpha::send, Alpha::receive, Alpha::initiate, Alpha::deliver};
inline constexpr std::array<Beta, 2> kBetas{Beta::finalize, Beta::wave};

/// Short tags used in column names: snd, rec, ini, dlv and fin, wav.
std::string_view tag(Alpha a);
std::string_view tag(Beta b);

/// Index into an 8-slot counter array, alpha-major.
constexpr std::size_t of_index(Alpha a, Beta b) {
    return static_cast<std::size_t>(a) * 2 + static_cast<std::size_t>(b);
}

struct AuditParams {
    std::uint32_t n = 0;
    std::uint32_t clients = 0;
    std::uint32_t puzzles = 0;
    NodeId reference = 0;
};

/// Per-transaction lifecycle instants reconstructed from a log.
struct Lifecycle {
    static constexpr Tick kNever = ~Tick{0};
    Tick sent = kNever;
    std::vector<Tick> received;
    std::vector<Tick> initiated;
    std::vector<Tick> delivered;
    std::optional<std::uint64_t> position;
    std::optional<std::uint32_t> wave;
};

struct Audit {
    std::vector<std::uint32_t> wins;
    std::uint32_t decided = 0;
    std::vector<double> scores;
    std::array<std::uint64_t, 8> violations{};
    std::uint64_t pairs = 0;
    std::uint32_t waves = 0;

    std::uint64_t violation(Alpha a, Beta b) const { return violations[of_index(a, b)]; }
};

/// Winner of puzzle k: smallest finalization position among "χ:k" on the
/// reference ledger; nullopt when no solution was finalized.
std::optional<ClientId> decide_winner(const std::vector<Lifecycle>& by_client_for_k);

/// Builds lifecycles for every game transaction of puzzles 1..p.
std::vector<std::vector<Lifecycle>> reconstruct(const std::vector<log::EventRecord>& log, const AuditParams& params);

/// Violation count of one property over ordered pairs of same-puzzle
/// transactions that are both finalized on the reference ledger.
std::uint64_t count_violations(const std::vector<std::vector<Lifecycle>>& lifecycles, Alpha a, Beta b,
                               std::uint32_t n);

Audit audit(const std::vector<log::EventRecord>& log, const AuditParams& params);

/// Lower quartile, median, upper quartile with linear interpolation.
std::array<double, 3> quartiles(std::vector<double> values);

/// Counters collected by the simulator that are not in the event log.
struct RunStats {
    std::uint64_t duplications = 0;
    std::uint64_t vertices = 0;
    std::vector<std::uint32_t> wave_tx_counts;
    std::uint64_t brb_init = 0;
    std::uint64_t brb_echo = 0;
    std::uint64_t brb_ready = 0;
    std::uint64_t brb_suppressed = 0;
    Tick final_tick = 0;
    std::uint64_t events = 0;
    std::uint64_t undrained = 0;
    bool partial = false;
    bool consistent = true;
    std::uint64_t structural_violations = 0;
    std::uint64_t brb_violations = 0;
};

/// Σ (occurrences - 1) over every transaction in `vertex_transactions`.
std::uint64_t count_duplications(const std::vector<std::vector<TxId>>& vertex_transactions);

inline constexpr int kCsvSchemaVersion = 1;

/// Config echo columns, in row order, right after schema_version.
inline constexpr std::array<std::string_view, 17> kConfigColumns{
    "seed",          "n",           "f",           "byzantine",    "clients",       "puzzles",
    "order",         "profile",     "fanout",      "third_party_rate", "pariah_depth", "target_client",
    "taint_scope",   "tick_ceiling", "puzzle_period", "solve_mean",  "client_delay_mean"};

/// Frozen header; bump kCsvSchemaVersion on any change.
const std::vector<std::string>& csv_columns();
std::string csv_header();

/// One flat CSV row. `config_fields` are the config echo values in the
/// order of the config columns of csv_columns().
std::string csv_row(const std::vector<std::string>& config_fields, ClientId target, const Audit& audit,
                    const RunStats& stats);

/// Shortest round-trip decimal form.
std::string format_double(double v);

}  // namespace dagfair::metrics
