#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "dagfair/errors.hpp"
#include "dagfair/fixtures.hpp"
#include "dagfair/ordering.hpp"
#include "dagfair/probes.hpp"

using namespace dagfair;
using namespace dagfair::order;

namespace {

// Precedence edges and component ranks of the example wave, produced by a
// networkx script (pairwise vote counts, strongly_connected_components,
// condensation) kept outside the code base.
const char* kOracleEdges =
    "A1>A2 A1>A3 A1>B2 A1>C2 A1>C3 A1>C4 A1>D1 A1>D2 A1>D3 A2>A3 A2>C2 A2>C3 A2>C4 A2>D3 A3>C4 "
    "B2>A2 B2>A3 B2>C2 B2>C3 B2>C4 B2>D1 B2>D2 B2>D3 C1>A2 C1>A3 C1>B2 C1>C2 C1>C3 C1>C4 C1>D1 "
    "C1>D2 C1>D3 C2>A3 C2>C3 C2>C4 C2>D1 C2>D2 C2>D3 C3>C4 D1>A2 D1>A3 D1>C3 D1>C4 D1>D2 D1>D3 "
    "D2>A2 D2>A3 D2>C3 D2>C4 D2>D3 D3>C4";
const std::map<std::string, std::uint32_t> kOracleRanks{
    {"C4", 0}, {"A3", 1}, {"C3", 1}, {"D3", 1}, {"A2", 2}, {"C2", 2},
    {"D1", 2}, {"D2", 2}, {"B2", 3}, {"A1", 4}, {"C1", 4}};

std::string label(const Vertex* v) {
    return std::string(1, static_cast<char>('A' + v->id.row)) + std::to_string(v->id.column);
}

std::vector<Digest> keys_of(const VoteTable& t) {
    std::vector<Digest> keys;
    for (auto* v : t.members) keys.push_back(v->digest);
    return keys;
}

}  // namespace

TEST_CASE("policy names") {
    CHECK(parse_policy("vote-count") == Policy::vote_count);
    CHECK(to_string(Policy::per_column_shuffle) == "per-column-shuffle");
    CHECK_THROWS_AS(parse_policy("random"), ConfigError);
}

TEST_CASE("example wave vote table matches the printed table cell for cell") {
    const auto fx = fixtures::example_wave();
    const auto t = build_vote_table(fx.pointers(), 4);
    REQUIRE(t.members.size() == 11);
    for (const auto& row : probes::printed_example_table()) {
        const auto it = std::find_if(t.members.begin(), t.members.end(),
                                     [&](const Vertex* v) { return v->id == row.vertex; });
        REQUIRE(it != t.members.end());
        const auto i = static_cast<std::size_t>(it - t.members.begin());
        for (NodeId r = 0; r < 4; ++r) {
            CAPTURE(label(*it));
            CAPTURE(r);
            CHECK(t.cell(i, r) == row.votes[r]);
        }
    }
    // Spot check: D1 -> (inf, inf, 3, 1).
    const auto d1 = std::find_if(t.members.begin(), t.members.end(),
                                 [](const Vertex* v) { return v->id == VertexId{3, 1}; });
    const auto i = static_cast<std::size_t>(d1 - t.members.begin());
    CHECK(t.cells[i] == std::vector<std::uint32_t>{kNoVote, kNoVote, 3, 1});
}

TEST_CASE("example wave precedence and ranks match the graph oracle") {
    const auto fx = fixtures::example_wave();
    const auto t = build_vote_table(fx.pointers(), 4);
    const auto g = build_precedence(t);

    std::set<std::string> edges;
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (auto j : g.successors[i]) edges.insert(label(t.members[i]) + ">" + label(t.members[j]));
    }
    std::set<std::string> oracle;
    std::istringstream in(kOracleEdges);
    for (std::string e; in >> e;) oracle.insert(e);
    CHECK(edges == oracle);

    const auto ranked = condense_and_rank(g, keys_of(t));
    CHECK(ranked.scc_count == 8);
    std::map<std::size_t, std::set<std::string>> comps;
    for (std::size_t i = 0; i < t.members.size(); ++i) {
        comps[ranked.scc_of[i]].insert(label(t.members[i]));
        CAPTURE(label(t.members[i]));
        CHECK(ranked.scc_rank[ranked.scc_of[i]] == kOracleRanks.at(label(t.members[i])));
    }
    std::size_t big = 0;
    for (auto& [_, members] : comps) {
        if (members.size() > 1) {
            CHECK(members == std::set<std::string>{"A2", "C2", "D1", "D2"});
            ++big;
        }
    }
    CHECK(big == 1);
}

TEST_CASE("ranked sequence respects every cross-component edge") {
    const auto fx = fixtures::example_wave();
    const auto t = build_vote_table(fx.pointers(), 4);
    const auto g = build_precedence(t);
    const auto ranked = condense_and_rank(g, keys_of(t));
    REQUIRE(ranked.sequence.size() == 11);
    std::vector<std::size_t> pos(11);
    for (std::size_t k = 0; k < 11; ++k) pos[ranked.sequence[k]] = k;
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (auto j : g.successors[i]) {
            if (ranked.scc_of[i] != ranked.scc_of[j]) CHECK(pos[i] < pos[j]);
        }
    }
    // Inside a rank, ascending digest.
    for (std::size_t k = 1; k < 11; ++k) {
        const auto a = ranked.sequence[k - 1], b = ranked.sequence[k];
        if (ranked.scc_rank[ranked.scc_of[a]] == ranked.scc_rank[ranked.scc_of[b]]) {
            CHECK(t.members[a]->digest < t.members[b]->digest);
        }
    }
}

TEST_CASE("condorcet fixture: printed rows and a three-vertex cycle") {
    const auto fx = fixtures::condorcet_cycle();
    const auto t = build_vote_table(fx.pointers(), 4);
    std::vector<std::size_t> idx;
    for (const auto& row : probes::printed_cycle_table()) {
        for (std::size_t i = 0; i < t.members.size(); ++i) {
            if (t.members[i]->id == row.vertex) {
                CHECK(t.cells[i] == row.votes);
                idx.push_back(i);
            }
        }
    }
    REQUIRE(idx.size() == 3);
    CHECK(t.cells[idx[0]] == std::vector<std::uint32_t>{4, kNoVote, 6, 5});

    const auto g = build_precedence(t);
    // The oracle's cycle: v40 -> v42 -> v43 -> v40.
    CHECK(g.has_edge(idx[0], idx[1]));
    CHECK(g.has_edge(idx[1], idx[2]));
    CHECK(g.has_edge(idx[2], idx[0]));
    const auto ranked = condense_and_rank(g, keys_of(t));
    CHECK(ranked.scc_of[idx[0]] == ranked.scc_of[idx[1]]);
    CHECK(ranked.scc_of[idx[1]] == ranked.scc_of[idx[2]]);
    CHECK(std::count(ranked.scc_of.begin(), ranked.scc_of.end(), ranked.scc_of[idx[0]]) == 3);
}

TEST_CASE("fixture probe passes") {
    const auto r = probes::vote_table_fixtures();
    CHECK(r.example_table);
    CHECK(r.cycle_table);
    CHECK(r.cycle_scc_size == 3);
    CHECK(r.example_largest_scc == 4);
    CHECK(r.example_max_rank == 4);
    CHECK(r.pass);
}

TEST_CASE("first_votes treats infinity as later than any column") {
    const auto fx = fixtures::example_wave();
    const auto t = build_vote_table(fx.pointers(), 4);
    auto at = [&](VertexId id) {
        return static_cast<std::size_t>(std::find_if(t.members.begin(), t.members.end(),
                                                     [&](const Vertex* v) { return v->id == id; }) -
                                        t.members.begin());
    };
    // C3 (inf,inf,3,inf) vs C4 (inf,inf,4,inf): only C votes, C3 first.
    CHECK(t.first_votes(at({2, 3}), at({2, 4})) == 1);
    CHECK(t.first_votes(at({2, 4}), at({2, 3})) == 0);
}

TEST_CASE("shuffles are deterministic permutations") {
    const auto fx = fixtures::example_wave();
    const auto members = fx.pointers();
    const auto a = order_full_shuffle(members, 123);
    CHECK(a == order_full_shuffle(members, 123));
    CHECK(std::is_permutation(a.begin(), a.end(), members.begin()));

    const auto p = order_per_column_shuffle(members);
    CHECK(p == order_per_column_shuffle(members));
    CHECK(std::is_permutation(p.begin(), p.end(), members.begin()));
    for (std::size_t i = 1; i < p.size(); ++i) CHECK(p[i - 1]->id.column <= p[i]->id.column);
}

TEST_CASE("full shuffle is uniform over seeds") {
    const auto fx = fixtures::example_wave();
    const auto all = fx.pointers();
    const std::vector<const Vertex*> three(all.begin(), all.begin() + 3);
    std::map<std::vector<const Vertex*>, double> seen;
    const int draws = 30000;
    for (int s = 0; s < draws; ++s) ++seen[order_full_shuffle(three, mix64(static_cast<std::uint64_t>(s)))];
    REQUIRE(seen.size() == 6);
    double chi = 0;
    for (auto& [_, c] : seen) chi += (c - draws / 6.0) * (c - draws / 6.0) / (draws / 6.0);
    CHECK(chi < 20.52);
}
