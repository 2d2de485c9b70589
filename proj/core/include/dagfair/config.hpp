#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "dagfair/adversary.hpp"
#include "dagfair/delay.hpp"
#include "dagfair/ordering.hpp"
#include "dagfair/types.hpp"

namespace dagfair {

/// Default background rate (transactions per tick, system-wide).
inline constexpr double kDefaultThirdPartyRate = 0.4;

/// One experiment point. Defaults: n = 13,
/// m = 3, 200-tick puzzles, quick network, fanout 3f+1.
struct SimConfig {
    std::uint32_t n = 13;
    std::uint32_t f = 4;
    std::uint32_t byzantine = 0;
    std::uint32_t clients = 3;
    std::uint32_t puzzles = 100;
    order::Policy order = order::Policy::per_column_shuffle;
    ProfileKind profile = ProfileKind::quick;
    /// As written by the user ("3f+1", "5", ...); resolved into `fanout`.
    std::string fanout_spec = "3f+1";
    std::uint32_t fanout = 13;
    double third_party_rate = kDefaultThirdPartyRate;
    std::uint32_t pariah_depth = 2;
    ClientId target_client = 0;
    adv::TaintScope taint_scope = adv::TaintScope::direct;
    std::uint64_t seed = 1;
    /// 0 means 10 * puzzles * puzzle_period.
    Tick tick_ceiling = 0;
    Tick puzzle_period = 200;
    double solve_mean = 100.0;
    double client_delay_mean = 20.0;
    bool log_third_party = false;
    std::string output_dir = ".";

    Tick effective_tick_ceiling() const { return tick_ceiling != 0 ? tick_ceiling : 10 * puzzles * puzzle_period; }
    DelayProfile delay_profile() const {
        return DelayProfile::make(profile, puzzle_period, solve_mean, client_delay_mean);
    }
    adv::AdversaryConfig adversary() const {
        return {byzantine, target_client, pariah_depth, taint_scope};
    }
    /// Values for metrics::kConfigColumns, in order.
    std::vector<std::string> csv_fields() const;
    /// key = value lines that parse back into this config.
    std::string to_text() const;
};

/// Sets one key. Accepts n or f (n must equal 3f+1 after validation).
/// Throws ConfigError naming the key.
void apply_setting(SimConfig& cfg, const std::string& key, const std::string& value);

/// Checks every cross-field rule and resolves the fanout. Throws
/// ConfigError naming the first offending field.
void validate(SimConfig& cfg);

/// Parses "key = value" lines; '#' starts a comment. Unknown keys are an
/// error. The result is validated.
SimConfig parse_config(std::istream& in);
SimConfig load_config(const std::string& path);

/// Splits "key = value" text into ordered pairs; used by the sweep parser.
std::vector<std::pair<std::string, std::string>> parse_key_values(std::istream& in);

}  // namespace dagfair
