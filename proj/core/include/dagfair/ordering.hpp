#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "dagfair/dagrider.hpp"
#include "dagfair/vertex.hpp"

namespace dagfair::order {

enum class Policy { full_shuffle, per_column_shuffle, vote_count };

std::string_view to_string(Policy p);
/// Accepts "full-shuffle", "per-column-shuffle" and "vote-count".
Policy parse_policy(std::string_view text);

/// Permutation of `members` seeded by `seed`, starting from (column, row)
/// order.
std::vector<const Vertex*> order_full_shuffle(std::vector<const Vertex*> members, Digest seed);

/// Column-ascending groups, each shuffled with the XOR of its digests.
std::vector<const Vertex*> order_per_column_shuffle(std::vector<const Vertex*> members);

inline constexpr std::uint32_t kNoVote = std::numeric_limits<std::uint32_t>::max();

/// cells[i][r]: earliest column at which a member authored by r reaches
/// members[i] (strong or weak edges, itself included), or kNoVote.
struct VoteTable {
    std::vector<const Vertex*> members;
    std::vector<std::vector<std::uint32_t>> cells;

    std::uint32_t cell(std::size_t i, NodeId r) const { return cells[i][r]; }
    /// Number of rows voting for i strictly before j.
    std::uint32_t first_votes(std::size_t i, std::size_t j) const;
};

VoteTable build_vote_table(std::vector<const Vertex*> members, std::uint32_t n);

/// Directed graph over table rows; edge i -> j means i is ordered before j.
struct PrecedenceGraph {
    std::vector<std::vector<std::size_t>> successors;

    std::size_t size() const { return successors.size(); }
    bool has_edge(std::size_t from, std::size_t to) const;
};

PrecedenceGraph build_precedence(const VoteTable& table);

struct RankedOrder {
    std::vector<std::size_t> scc_of;
    std::size_t scc_count = 0;
    /// Longest distance from each component to a sink of the condensation.
    std::vector<std::uint32_t> scc_rank;
    /// Final sequence of graph node indices.
    std::vector<std::size_t> sequence;
};

/// Tarjan components, condensation ranking, then descending rank with
/// ascending `keys` inside a rank.
RankedOrder condense_and_rank(const PrecedenceGraph& graph, const std::vector<Digest>& keys);

std::vector<const Vertex*> order_vote_count(std::vector<const Vertex*> members, std::uint32_t n);

/// Applies `policy` to a formed wave.
std::vector<const Vertex*> order_wave(Policy policy, const dag::Wave& wave, std::uint32_t n);

}  // namespace dagfair::order
