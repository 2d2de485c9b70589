#pragma once

#include <cstdint>
#include <vector>

#include "dagfair/types.hpp"
#include "dagfair/vertex.hpp"

namespace dagfair::fixtures {

/// A small hand-drawn DAG: its vertices (any order) plus the row count.
struct Fixture {
    std::uint32_t rows = 0;
    std::vector<VertexPtr> vertices;

    const Vertex* find(VertexId id) const;
    std::vector<const Vertex*> pointers() const;
};

/// Rows A..D are 0..3. The 11-vertex example wave with two weak edges to
/// (D,1); no genesis column.
Fixture example_wave();

/// Rows n0..n3, columns 4..6: the three-way precedence cycle.
Fixture condorcet_cycle();

/// Rows A..D with D's first vertices not referenced by anyone; columns
/// 0..3 for A, B, C and 0..2 for D. Genesis vertices included.
Fixture stalled_row();

/// Rows A, B, C (0..2) of the three-node pariah example; client 0 is the
/// target and x1 is TxId::game(0, 1). Genesis vertices included.
Fixture pariah_three_nodes();

/// Seven rows, columns 0..2: rows 0 (column 1) and 3 (column 2) carry
/// target transactions; row 2 at column 2 references (0,1).
Fixture pariah_seven_nodes();

}  // namespace dagfair::fixtures
