#pragma once

#include <memory>
#include <vector>

#include "dagfair/types.hpp"

namespace dagfair {

/// A DAG vertex: one author's transaction batch for one column.
struct Vertex {
    VertexId id;
    std::vector<TxId> transactions;
    std::vector<VertexId> strong_edges;
    std::vector<VertexId> weak_edges;
    Digest digest = 0;

    NodeId row() const { return id.row; }
    std::uint32_t column() const { return id.column; }
    bool is_genesis() const { return id.column == 0; }
};

using VertexPtr = std::shared_ptr<const Vertex>;

/// Deterministic content hash over id, transactions and edges.
Digest compute_digest(const Vertex& v);

/// Builds a vertex and fills in its digest. Edge lists are sorted.
VertexPtr make_vertex(VertexId id, std::vector<TxId> transactions, std::vector<VertexId> strong_edges,
                      std::vector<VertexId> weak_edges = {});

VertexPtr make_genesis(NodeId row);

/// Checks the edge-shape invariants (strong edges at column-1 with
/// 2f+1..n of them, at most f weak edges below column-1). Genesis vertices
/// trivially pass.
bool satisfies_edge_caps(const Vertex& v, std::uint32_t n, std::uint32_t f);

}  // namespace dagfair
