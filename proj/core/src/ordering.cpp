#include "dagfair/ordering.hpp"

#include <algorithm>
#include <unordered_map>

#include "dagfair/errors.hpp"
#include "dagfair/rng.hpp"

namespace dagfair::order {

namespace {

bool position_less(const Vertex* a, const Vertex* b) {
    return a->id.column != b->id.column ? a->id.column < b->id.column : a->id.row < b->id.row;
}

}  // namespace

std::string_view to_string(Policy p) {
    switch (p) {
        case Policy::full_shuffle: return "full-shuffle";
        case Policy::per_column_shuffle: return "per-column-shuffle";
        case Policy::vote_count: return "vote-count";
    }
    return "?";
}

Policy parse_policy(std::string_view text) {
    if (text == "full-shuffle") return Policy::full_shuffle;
    if (text == "per-column-shuffle") return Policy::per_column_shuffle;
    if (text == "vote-count") return Policy::vote_count;
    throw ConfigError("order", "unknown ordering policy '" + std::string(text) + "'");
}

std::vector<const Vertex*> order_full_shuffle(std::vector<const Vertex*> members, Digest seed) {
    std::sort(members.begin(), members.end(), position_less);
    Rng rng{seed};
    portable_shuffle(members.begin(), members.end(), rng);
    return members;
}

std::vector<const Vertex*> order_per_column_shuffle(std::vector<const Vertex*> members) {
    std::sort(members.begin(), members.end(), position_less);
    auto first = members.begin();
    while (first != members.end()) {
        auto last = first;
        Digest seed = 0;
        while (last != members.end() && (*last)->id.column == (*first)->id.column) {
            seed ^= (*last)->digest;
            ++last;
        }
        Rng rng{seed};
        portable_shuffle(first, last, rng);
        first = last;
    }
    return members;
}

std::uint32_t VoteTable::first_votes(std::size_t i, std::size_t j) const {
    std::uint32_t count = 0;
    for (std::size_t r = 0; r < cells[i].size(); ++r) {
        if (cells[i][r] < cells[j][r]) ++count;
    }
    return count;
}

VoteTable build_vote_table(std::vector<const Vertex*> members, std::uint32_t n) {
    std::sort(members.begin(), members.end(), position_less);
    const std::size_t size = members.size();
    const std::size_t words = (size + 63) / 64;
    std::unordered_map<VertexId, std::size_t> index;
    for (std::size_t i = 0; i < size; ++i) index.emplace(members[i]->id, i);

    // reach[i]: bitset of members in the causal history of members[i].
    // Edges point to lower columns, so ascending order sees targets first.
    std::vector<std::vector<std::uint64_t>> reach(size, std::vector<std::uint64_t>(words, 0));
    for (std::size_t i = 0; i < size; ++i) {
        reach[i][i / 64] |= std::uint64_t{1} << (i % 64);
        auto absorb = [&](VertexId e) {
            auto it = index.find(e);
            if (it == index.end()) return;
            for (std::size_t w = 0; w < words; ++w) reach[i][w] |= reach[it->second][w];
        };
        for (const VertexId e : members[i]->strong_edges) absorb(e);
        for (const VertexId e : members[i]->weak_edges) absorb(e);
    }

    VoteTable table;
    table.cells.assign(size, std::vector<std::uint32_t>(n, kNoVote));
    for (std::size_t u = 0; u < size; ++u) {
        const NodeId r = members[u]->id.row;
        const std::uint32_t c = members[u]->id.column;
        for (std::size_t v = 0; v < size; ++v) {
            if ((reach[u][v / 64] >> (v % 64)) & 1U) {
                table.cells[v][r] = std::min(table.cells[v][r], c);
            }
        }
    }
    table.members = std::move(members);
    return table;
}

bool PrecedenceGraph::has_edge(std::size_t from, std::size_t to) const {
    const auto& s = successors[from];
    return std::find(s.begin(), s.end(), to) != s.end();
}

PrecedenceGraph build_precedence(const VoteTable& table) {
    const std::size_t size = table.cells.size();
    PrecedenceGraph g;
    g.successors.resize(size);
    for (std::size_t i = 0; i < size; ++i) {
        for (std::size_t j = i + 1; j < size; ++j) {
            const auto a = table.first_votes(i, j);
            const auto b = table.first_votes(j, i);
            if (a > b) g.successors[i].push_back(j);
            if (b > a) g.successors[j].push_back(i);
        }
    }
    for (auto& s : g.successors) std::sort(s.begin(), s.end());
    return g;
}

RankedOrder condense_and_rank(const PrecedenceGraph& graph, const std::vector<Digest>& keys) {
    const std::size_t size = graph.size();
    constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
    RankedOrder out;
    out.scc_of.assign(size, unvisited);

    // Iterative Tarjan.
    std::vector<std::size_t> low(size, 0), disc(size, unvisited), stack;
    std::vector<bool> on_stack(size, false);
    std::vector<std::pair<std::size_t, std::size_t>> call;  // (node, next successor slot)
    std::size_t counter = 0;
    for (std::size_t root = 0; root < size; ++root) {
        if (disc[root] != unvisited) continue;
        call.emplace_back(root, 0);
        disc[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            auto& [v, slot] = call.back();
            if (slot < graph.successors[v].size()) {
                const std::size_t w = graph.successors[v][slot++];
                if (disc[w] == unvisited) {
                    disc[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.emplace_back(w, 0);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], disc[w]);
                }
                continue;
            }
            const std::size_t done = v;
            call.pop_back();
            if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
            if (low[done] == disc[done]) {
                for (;;) {
                    const std::size_t w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    out.scc_of[w] = out.scc_count;
                    if (w == done) break;
                }
                ++out.scc_count;
            }
        }
    }

    // Tarjan emits components in reverse topological order: every edge
    // between components goes from a higher id to a lower id, so ranks can
    // be filled in ascending id order.
    out.scc_rank.assign(out.scc_count, 0);
    std::vector<std::vector<std::size_t>> members(out.scc_count);
    for (std::size_t v = 0; v < size; ++v) members[out.scc_of[v]].push_back(v);
    for (std::size_t c = 0; c < out.scc_count; ++c) {
        for (const std::size_t v : members[c]) {
            for (const std::size_t w : graph.successors[v]) {
                const std::size_t d = out.scc_of[w];
                if (d != c) out.scc_rank[c] = std::max(out.scc_rank[c], out.scc_rank[d] + 1);
            }
        }
    }

    out.sequence.resize(size);
    for (std::size_t v = 0; v < size; ++v) out.sequence[v] = v;
    std::sort(out.sequence.begin(), out.sequence.end(), [&](std::size_t a, std::size_t b) {
        const auto ra = out.scc_rank[out.scc_of[a]];
        const auto rb = out.scc_rank[out.scc_of[b]];
        if (ra != rb) return ra > rb;
        if (keys[a] != keys[b]) return keys[a] < keys[b];
        return a < b;
    });
    return out;
}

std::vector<const Vertex*> order_vote_count(std::vector<const Vertex*> members, std::uint32_t n) {
    const VoteTable table = build_vote_table(std::move(members), n);
    const PrecedenceGraph graph = build_precedence(table);
    std::vector<Digest> keys;
    keys.reserve(table.members.size());
    for (const Vertex* v : table.members) keys.push_back(v->digest);
    const RankedOrder ranked = condense_and_rank(graph, keys);
    std::vector<const Vertex*> out;
    out.reserve(ranked.sequence.size());
    for (const std::size_t i : ranked.sequence) out.push_back(table.members[i]);
    return out;
}

std::vector<const Vertex*> order_wave(Policy policy, const dag::Wave& wave, std::uint32_t n) {
    switch (policy) {
        case Policy::full_shuffle: return order_full_shuffle(wave.members, wave.leader->digest);
        case Policy::per_column_shuffle: return order_per_column_shuffle(wave.members);
        case Policy::vote_count: return order_vote_count(wave.members, n);
    }
    return wave.members;
}

}  // namespace dagfair::order
