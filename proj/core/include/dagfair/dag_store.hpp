#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "dagfair/types.hpp"
#include "dagfair/vertex.hpp"

namespace dagfair::dag {

/// One node's local view: the DAG proper, delivered-but-unconnected
/// vertices, the transaction mempool and the finalization frontier.
///
/// Invariant: every vertex in the DAG has all of its edge targets in the
/// DAG. Genesis vertices (column 0, one per row) are present from the start.
class DagStore {
public:
    DagStore(std::uint32_t n, std::uint32_t f);

    std::uint32_t n() const { return n_; }
    std::uint32_t f() const { return f_; }
    std::uint32_t quorum() const { return 2 * f_ + 1; }

    // --- DAG -------------------------------------------------------------

    bool contains(VertexId id) const { return find(id) != nullptr; }
    const Vertex* find(VertexId id) const;
    VertexPtr find_shared(VertexId id) const;
    /// Number of vertices present at `column`.
    std::uint32_t column_size(std::uint32_t column) const;
    /// Vertices at `column` in row order.
    std::vector<const Vertex*> column(std::uint32_t column) const;
    /// Highest column with at least one vertex.
    std::uint32_t top_column() const { return static_cast<std::uint32_t>(columns_.size() - 1); }
    std::size_t vertex_count() const { return vertex_count_; }
    /// Vertices in the DAG that no other DAG vertex references.
    const std::unordered_set<VertexId>& unreferenced() const { return unreferenced_; }

    /// Hands a BRB-delivered vertex to the store. The vertex is buffered
    /// until all its edge targets are present, then inserted; insertion may
    /// cascade through other buffered vertices. Returns the vertices that
    /// entered the DAG, in insertion order. Duplicates are ignored.
    std::vector<VertexPtr> deliver(VertexPtr v);
    std::size_t buffered_count() const { return buffered_.size(); }
    bool is_buffered(VertexId id) const { return buffered_.contains(id); }

    // --- mempool ---------------------------------------------------------

    /// Pushes a received transaction unless it is already pending or already
    /// in the DAG. Returns true when the transaction was added.
    bool push_transaction(TxId tx);
    /// Pending transactions in reception order.
    const std::deque<TxId>& mempool() const { return mempool_; }
    bool in_dag(TxId tx) const { return included_.contains(tx); }
    /// Pending transactions that this node has not put in a proposal yet
    /// and that pass `eligible`.
    std::size_t proposable_count(const std::function<bool(TxId)>& eligible = {}) const;
    /// Copies the proposable transactions (FIFO order) and marks them as
    /// proposed; they remain pending until a DAG vertex containing them is
    /// inserted.
    std::vector<TxId> extract_for_proposal(const std::function<bool(TxId)>& eligible = {});

    // --- proposal cursor / finalization frontier -------------------------

    std::uint32_t next_column() const { return next_column_; }
    void advance_column() { ++next_column_; }

    bool is_ordered(VertexId id) const { return ordered_.contains(id); }
    std::optional<std::uint32_t> ordered_wave(VertexId id) const;
    void mark_ordered(VertexId id, std::uint32_t wave);
    const std::unordered_map<VertexId, std::uint32_t>& ordered() const { return ordered_; }

    std::uint32_t leader_cursor() const { return leader_cursor_; }
    void set_leader_cursor(std::uint32_t w) { leader_cursor_ = w; }

private:
    void insert(const VertexPtr& v);
    bool parents_present(const Vertex& v) const;

    std::uint32_t n_;
    std::uint32_t f_;
    // columns_[c][row]; null when absent.
    std::vector<std::vector<VertexPtr>> columns_;
    std::vector<std::uint32_t> column_sizes_;
    std::size_t vertex_count_ = 0;
    std::unordered_set<VertexId> unreferenced_;

    std::unordered_map<VertexId, VertexPtr> buffered_;
    // missing parent -> buffered vertices waiting on it
    std::unordered_map<VertexId, std::vector<VertexId>> waiting_on_;
    std::unordered_map<VertexId, std::uint32_t> missing_count_;

    std::deque<TxId> mempool_;
    std::unordered_set<TxId> pending_;
    std::unordered_set<TxId> proposed_;
    std::unordered_set<TxId> included_;

    std::uint32_t next_column_ = 1;
    std::unordered_map<VertexId, std::uint32_t> ordered_;
    std::uint32_t leader_cursor_ = 0;
};

}  // namespace dagfair::dag
