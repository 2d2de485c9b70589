#include "dagfair/dag_store.hpp"

#include <algorithm>

namespace dagfair::dag {

DagStore::DagStore(std::uint32_t n, std::uint32_t f) : n_(n), f_(f) {
    columns_.emplace_back(n);
    column_sizes_.push_back(0);
    for (NodeId row = 0; row < n; ++row) insert(make_genesis(row));
}

const Vertex* DagStore::find(VertexId id) const {
    if (id.column >= columns_.size() || id.row >= n_) return nullptr;
    return columns_[id.column][id.row].get();
}

VertexPtr DagStore::find_shared(VertexId id) const {
    if (id.column >= columns_.size() || id.row >= n_) return nullptr;
    return columns_[id.column][id.row];
}

std::uint32_t DagStore::column_size(std::uint32_t column) const {
    return column < column_sizes_.size() ? column_sizes_[column] : 0;
}

std::vector<const Vertex*> DagStore::column(std::uint32_t column) const {
    std::vector<const Vertex*> out;
    if (column >= columns_.size()) return out;
    for (const auto& v : columns_[column]) {
        if (v) out.push_back(v.get());
    }
    return out;
}

bool DagStore::parents_present(const Vertex& v) const {
    for (const VertexId e : v.strong_edges) {
        if (!contains(e)) return false;
    }
    for (const VertexId e : v.weak_edges) {
        if (!contains(e)) return false;
    }
    return true;
}

void DagStore::insert(const VertexPtr& v) {
    const VertexId id = v->id;
    while (columns_.size() <= id.column) {
        columns_.emplace_back(n_);
        column_sizes_.push_back(0);
    }
    columns_[id.column][id.row] = v;
    ++column_sizes_[id.column];
    ++vertex_count_;
    unreferenced_.insert(id);
    for (const VertexId e : v->strong_edges) unreferenced_.erase(e);
    for (const VertexId e : v->weak_edges) unreferenced_.erase(e);
    for (const TxId tx : v->transactions) {
        included_.insert(tx);
        if (pending_.erase(tx) != 0) proposed_.erase(tx);
    }
    if (!v->transactions.empty()) {
        std::erase_if(mempool_, [&](TxId tx) { return !pending_.contains(tx); });
    }
}

std::vector<VertexPtr> DagStore::deliver(VertexPtr v) {
    std::vector<VertexPtr> inserted;
    const VertexId id = v->id;
    if (id.row >= n_ || contains(id) || buffered_.contains(id)) return inserted;

    std::uint32_t missing = 0;
    auto register_missing = [&](VertexId parent) {
        if (!contains(parent)) {
            auto& waiters = waiting_on_[parent];
            if (std::find(waiters.begin(), waiters.end(), id) == waiters.end()) {
                waiters.push_back(id);
                ++missing;
            }
        }
    };
    for (const VertexId e : v->strong_edges) register_missing(e);
    for (const VertexId e : v->weak_edges) register_missing(e);

    if (missing > 0) {
        buffered_.emplace(id, std::move(v));
        missing_count_[id] = missing;
        return inserted;
    }

    // Cascade: inserting one vertex may release buffered descendants.
    std::vector<VertexPtr> ready{std::move(v)};
    while (!ready.empty()) {
        VertexPtr next = std::move(ready.back());
        ready.pop_back();
        insert(next);
        inserted.push_back(next);
        auto it = waiting_on_.find(next->id);
        if (it == waiting_on_.end()) continue;
        std::vector<VertexId> waiters = std::move(it->second);
        waiting_on_.erase(it);
        // Release in (column, row) order so cascades are deterministic.
        std::sort(waiters.begin(), waiters.end(), [](VertexId a, VertexId b) {
            return a.column != b.column ? a.column > b.column : a.row > b.row;
        });
        for (const VertexId w : waiters) {
            auto mc = missing_count_.find(w);
            if (--mc->second == 0) {
                missing_count_.erase(mc);
                auto node = buffered_.extract(w);
                ready.push_back(std::move(node.mapped()));
            }
        }
    }
    return inserted;
}

bool DagStore::push_transaction(TxId tx) {
    if (included_.contains(tx) || pending_.contains(tx)) return false;
    pending_.insert(tx);
    mempool_.push_back(tx);
    return true;
}

std::size_t DagStore::proposable_count(const std::function<bool(TxId)>& eligible) const {
    std::size_t count = 0;
    for (const TxId tx : mempool_) {
        if (!proposed_.contains(tx) && (!eligible || eligible(tx))) ++count;
    }
    return count;
}

std::vector<TxId> DagStore::extract_for_proposal(const std::function<bool(TxId)>& eligible) {
    std::vector<TxId> out;
    for (const TxId tx : mempool_) {
        if (!proposed_.contains(tx) && (!eligible || eligible(tx))) out.push_back(tx);
    }
    for (const TxId tx : out) proposed_.insert(tx);
    return out;
}

std::optional<std::uint32_t> DagStore::ordered_wave(VertexId id) const {
    auto it = ordered_.find(id);
    if (it == ordered_.end()) return std::nullopt;
    return it->second;
}

void DagStore::mark_ordered(VertexId id, std::uint32_t wave) {
    ordered_.emplace(id, wave);
}

}  // namespace dagfair::dag
