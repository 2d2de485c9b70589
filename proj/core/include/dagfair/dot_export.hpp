#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "dagfair/dag_store.hpp"
#include "dagfair/vertex.hpp"

namespace dagfair {

struct DotOptions {
    std::string name = "dag";
    /// Wave index of ordered vertices; others are left white.
    std::unordered_map<VertexId, std::uint32_t> wave_of;
    std::vector<VertexId> leaders;
};

/// Columns are laid out left to right, one rank per column. Strong edges
/// are solid red, weak edges dashed blue, leaders get a thick outline and
/// fill colour cycles with the wave index. Output is byte-stable.
std::string export_dot(std::vector<const Vertex*> vertices, const DotOptions& options);

/// Every vertex in `store` (genesis included) with its wave colouring.
std::string export_dot(const dag::DagStore& store, const std::vector<VertexId>& leaders, const std::string& name = "dag");

}  // namespace dagfair
