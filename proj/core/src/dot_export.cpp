#include "dagfair/dot_export.hpp"

#include <algorithm>
#include <array>
#include <sstream>
#include <unordered_set>

namespace dagfair {

namespace {

constexpr std::array<const char*, 8> kPalette{"#fbb4ae", "#b3cde3", "#ccebc5", "#decbe4",
                                              "#fed9a6", "#ffffcc", "#e5d8bd", "#fddaec"};

std::string node_name(VertexId id) {
    return "v" + std::to_string(id.row) + "_" + std::to_string(id.column);
}

}  // namespace

std::string export_dot(std::vector<const Vertex*> vertices, const DotOptions& options) {
    std::sort(vertices.begin(), vertices.end(), [](const Vertex* a, const Vertex* b) {
        return a->id.column != b->id.column ? a->id.column < b->id.column : a->id.row < b->id.row;
    });
    const std::unordered_set<VertexId> leaders(options.leaders.begin(), options.leaders.end());

    std::ostringstream out;
    out << "digraph " << options.name << " {\n";
    out << "  rankdir=LR;\n";
    out << "  node [shape=box, style=filled, fillcolor=white, fontname=\"monospace\"];\n";
    std::size_t i = 0;
    while (i < vertices.size()) {
        const std::uint32_t column = vertices[i]->id.column;
        out << "  { rank=same;";
        for (std::size_t j = i; j < vertices.size() && vertices[j]->id.column == column; ++j) {
            out << ' ' << node_name(vertices[j]->id) << ';';
        }
        out << " }\n";
        for (; i < vertices.size() && vertices[i]->id.column == column; ++i) {
            const Vertex& v = *vertices[i];
            out << "  " << node_name(v.id) << " [label=\"(" << v.id.row << "," << v.id.column << ") "
                << v.transactions.size() << " tx\"";
            if (auto it = options.wave_of.find(v.id); it != options.wave_of.end()) {
                out << ", fillcolor=\"" << kPalette[it->second % kPalette.size()] << "\"";
            }
            if (leaders.contains(v.id)) out << ", penwidth=3";
            out << "];\n";
        }
    }
    for (const Vertex* v : vertices) {
        for (const VertexId e : v->strong_edges) {
            out << "  " << node_name(v->id) << " -> " << node_name(e) << " [color=red];\n";
        }
        for (const VertexId e : v->weak_edges) {
            out << "  " << node_name(v->id) << " -> " << node_name(e) << " [color=blue, style=dashed];\n";
        }
    }
    out << "}\n";
    return out.str();
}

std::string export_dot(const dag::DagStore& store, const std::vector<VertexId>& leaders, const std::string& name) {
    std::vector<const Vertex*> vertices;
    for (std::uint32_t c = 0; c <= store.top_column(); ++c) {
        for (const Vertex* v : store.column(c)) vertices.push_back(v);
    }
    DotOptions options;
    options.name = name;
    options.wave_of = store.ordered();
    options.leaders = leaders;
    return export_dot(std::move(vertices), options);
}

}  // namespace dagfair
