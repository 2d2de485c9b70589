#include "dagfair/dagrider.hpp"

#include <algorithm>

namespace dagfair::dag {

namespace {

bool by_position(const Vertex* a, const Vertex* b) {
    return a->id.column != b->id.column ? a->id.column < b->id.column : a->id.row < b->id.row;
}

}  // namespace

std::vector<const Vertex*> find_orphans(const DagStore& store, std::uint32_t column,
                                        const std::vector<VertexId>& strong_targets) {
    std::vector<const Vertex*> out;
    if (column < 2) return out;
    const std::uint32_t top = column - 2;
    const std::uint32_t low = column - 1 > kOrphanWindow ? column - 1 - kOrphanWindow : 0;

    std::unordered_set<VertexId> seen;
    std::vector<VertexId> stack(strong_targets.begin(), strong_targets.end());
    while (!stack.empty()) {
        const VertexId id = stack.back();
        stack.pop_back();
        if (id.column < low || !seen.insert(id).second) continue;
        const Vertex* v = store.find(id);
        if (v == nullptr) continue;
        for (const VertexId e : v->strong_edges) stack.push_back(e);
        for (const VertexId e : v->weak_edges) stack.push_back(e);
    }
    for (std::uint32_t c = low; c <= top; ++c) {
        for (const Vertex* v : store.column(c)) {
            if (!seen.contains(v->id)) out.push_back(v);
        }
    }
    // Below the window only never-referenced vertices can be orphans.
    for (const VertexId id : store.unreferenced()) {
        if (id.column < low) out.push_back(store.find(id));
    }
    std::sort(out.begin(), out.end(), by_position);
    return out;
}

std::vector<VertexId> select_weak_edges(std::vector<const Vertex*> orphans, std::uint32_t cap, Rng& rng) {
    std::sort(orphans.begin(), orphans.end(), by_position);
    std::vector<VertexId> out;
    std::size_t i = 0;
    while (i < orphans.size() && out.size() < cap) {
        std::size_t j = i;
        while (j < orphans.size() && orphans[j]->id.column == orphans[i]->id.column) ++j;
        portable_shuffle(orphans.begin() + static_cast<std::ptrdiff_t>(i),
                         orphans.begin() + static_cast<std::ptrdiff_t>(j), rng);
        for (std::size_t k = i; k < j && out.size() < cap; ++k) out.push_back(orphans[k]->id);
        i = j;
    }
    return out;
}

std::optional<VertexPtr> try_propose(DagStore& store, NodeId self, Rng& rng, const ProposalOptions& options) {
    const std::uint32_t c = store.next_column();
    if (store.column_size(c - 1) < store.quorum()) return std::nullopt;
    if (!options.allow_empty && store.proposable_count() == 0) return std::nullopt;

    std::vector<VertexId> strong;
    for (const Vertex* v : store.column(c - 1)) strong.push_back(v->id);
    auto weak = select_weak_edges(find_orphans(store, c, strong), store.f(), rng);
    auto txs = store.extract_for_proposal();
    store.advance_column();
    return make_vertex({self, c}, std::move(txs), std::move(strong), std::move(weak));
}

NodeId elect_leader(std::uint32_t wave, std::uint32_t n, std::uint64_t coin_seed) {
    Rng rng = make_rng(coin_seed, Stream::coin, wave);
    return static_cast<NodeId>(uniform_below(rng, n));
}

bool strong_path(const DagStore& store, const Vertex& from, const Vertex& to) {
    if (from.id == to.id) return true;
    if (from.id.column <= to.id.column) return false;
    std::unordered_set<VertexId> seen;
    std::vector<const Vertex*> stack{&from};
    while (!stack.empty()) {
        const Vertex* v = stack.back();
        stack.pop_back();
        for (const VertexId e : v->strong_edges) {
            if (e == to.id) return true;
            if (e.column <= to.id.column || !seen.insert(e).second) continue;
            if (const Vertex* next = store.find(e)) stack.push_back(next);
        }
    }
    return false;
}

std::uint32_t strong_supporters(const DagStore& store, const Vertex& target, std::uint32_t column) {
    if (column < target.id.column) return 0;
    // Forward sweep: which vertices of each column reach the target.
    std::unordered_set<VertexId> reaching{target.id};
    for (std::uint32_t c = target.id.column + 1; c <= column; ++c) {
        for (const Vertex* v : store.column(c)) {
            for (const VertexId e : v->strong_edges) {
                if (reaching.contains(e)) {
                    reaching.insert(v->id);
                    break;
                }
            }
        }
    }
    std::uint32_t count = 0;
    for (const Vertex* v : store.column(column)) count += reaching.contains(v->id) ? 1 : 0;
    return count;
}

std::vector<const Vertex*> causal_members(const DagStore& store, const Vertex& leader) {
    std::vector<const Vertex*> out;
    if (store.is_ordered(leader.id)) return out;
    std::unordered_set<VertexId> seen{leader.id};
    std::vector<const Vertex*> stack{&leader};
    while (!stack.empty()) {
        const Vertex* v = stack.back();
        stack.pop_back();
        out.push_back(v);
        auto visit = [&](VertexId e) {
            if (e.column == 0 || store.is_ordered(e) || !seen.insert(e).second) return;
            if (const Vertex* next = store.find(e)) stack.push_back(next);
        };
        for (const VertexId e : v->strong_edges) visit(e);
        for (const VertexId e : v->weak_edges) visit(e);
    }
    std::sort(out.begin(), out.end(), by_position);
    return out;
}

WaveDecision try_form_wave(const DagStore& store, std::uint32_t w, std::uint64_t coin_seed) {
    const std::uint32_t dc = decision_column(w);
    if (store.column_size(dc) < store.quorum()) return WaveNotReady{};
    const Vertex* leader = store.find({elect_leader(w, store.n(), coin_seed), leader_column(w)});
    if (leader == nullptr || strong_supporters(store, *leader, dc) < store.quorum()) return WaveSkip{};
    return Wave{w, leader, causal_members(store, *leader)};
}

std::vector<Wave> WaveCommitter::advance(DagStore& store, std::optional<std::uint32_t> cap) {
    std::vector<Wave> out;
    for (;;) {
        const std::uint32_t w = next_wave_;
        const WaveDecision decision = try_form_wave(store, w, coin_seed_);
        if (std::holds_alternative<WaveNotReady>(decision)) break;
        ++next_wave_;
        store.set_leader_cursor(next_wave_);
        if (std::holds_alternative<WaveSkip>(decision)) continue;

        // Leader chain: earlier uncommitted leaders reachable by strong paths
        // are committed before this one.
        std::vector<std::pair<std::uint32_t, const Vertex*>> chain{{w, std::get<Wave>(decision).leader}};
        const std::uint32_t floor = last_committed_ ? *last_committed_ + 1 : 0;
        for (std::uint32_t prev = w; prev > floor; --prev) {
            const std::uint32_t wp = prev - 1;
            const Vertex* candidate = store.find({elect_leader(wp, store.n(), coin_seed_), leader_column(wp)});
            if (candidate != nullptr && strong_path(store, *chain.back().second, *candidate)) {
                chain.emplace_back(wp, candidate);
            }
        }
        for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
            const auto [index, leader] = *it;
            last_committed_ = index;
            leaders_.push_back(leader->id);
            if (cap && index > *cap) continue;
            Wave wave{index, leader, causal_members(store, *leader)};
            for (const Vertex* v : wave.members) store.mark_ordered(v->id, index);
            out.push_back(std::move(wave));
        }
    }
    return out;
}

std::vector<TxId> Ledger::finalize_wave(const std::vector<const Vertex*>& ordered, std::uint32_t wave) {
    std::vector<TxId> appended;
    for (const Vertex* v : ordered) {
        for (const TxId tx : v->transactions) {
            if (positions_.contains(tx)) continue;
            positions_.emplace(tx, entries_.size());
            entries_.push_back({tx, wave});
            appended.push_back(tx);
        }
    }
    return appended;
}

std::optional<std::size_t> Ledger::position(TxId tx) const {
    auto it = positions_.find(tx);
    if (it == positions_.end()) return std::nullopt;
    return it->second;
}

}  // namespace dagfair::dag
