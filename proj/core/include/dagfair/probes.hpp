#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dagfair/types.hpp"

namespace dagfair::probes {

struct SabotageRow {
    std::uint32_t b = 0;
    double x = 0.0;
    double analytic_y = 0.0;
    double analytic_z = 0.0;
    double empirical_z = 0.0;
};

/// Monte-Carlo of one broadcast round per trial: each of the n-b honest
/// nodes collects echoes that arrive in time with probability x, sends
/// READY on an echo quorum, and the observer delivers on 2f+1 READYs.
/// Throws std::invalid_argument when trials < 10^4.
std::vector<SabotageRow> bracha_sabotage(std::uint32_t n, std::uint32_t f, const std::vector<std::uint32_t>& bs,
                                         const std::vector<double>& xs, std::uint64_t trials, std::uint64_t seed);

struct WeakEdgeReport {
    std::uint32_t orphans = 0;
    std::vector<VertexId> weak_edges;
    std::uint32_t cap = 0;
    bool lowest_column = false;
    bool pass = false;
};

/// Replays the stalled-row scenario: node C proposes at column 4 while D's
/// vertices at columns 0..2 are all orphans.
WeakEdgeReport weak_edge_scenario(std::uint64_t seed);

struct FixtureReport {
    bool example_table = false;
    bool cycle_table = false;
    std::uint32_t cycle_scc_size = 0;
    std::uint32_t example_largest_scc = 0;
    std::uint32_t example_max_rank = 0;
    bool pass = false;
};

/// Rebuilds both vote-table fixtures and checks them against the printed
/// tables.
FixtureReport vote_table_fixtures();

/// Printed ground truth: row vertex then votes per row (kNoVote = none).
struct PrintedRow {
    VertexId vertex;
    std::vector<std::uint32_t> votes;
};
const std::vector<PrintedRow>& printed_example_table();
const std::vector<PrintedRow>& printed_cycle_table();

}  // namespace dagfair::probes
