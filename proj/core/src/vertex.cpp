#include "dagfair/vertex.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

#include "dagfair/rng.hpp"

namespace dagfair {

std::string TxId::to_string() const {
    if (is_game()) return "c" + std::to_string(client()) + ":" + std::to_string(puzzle());
    return "t:" + std::to_string(sequence());
}

TxId TxId::parse(std::string_view text) {
    auto parse_number = [&](std::string_view digits) {
        std::uint64_t value = 0;
        const auto* end = digits.data() + digits.size();
        auto [ptr, ec] = std::from_chars(digits.data(), end, value);
        if (ec != std::errc{} || ptr != end || digits.empty()) {
            throw std::invalid_argument("malformed transaction id '" + std::string(text) + "'");
        }
        return value;
    };
    if (text.starts_with("t:")) return third_party(parse_number(text.substr(2)));
    if (text.starts_with("c")) {
        const auto colon = text.find(':');
        if (colon == std::string_view::npos) throw std::invalid_argument("malformed transaction id '" + std::string(text) + "'");
        const auto client = parse_number(text.substr(1, colon - 1));
        const auto puzzle = parse_number(text.substr(colon + 1));
        return game(static_cast<ClientId>(client), static_cast<std::uint32_t>(puzzle));
    }
    throw std::invalid_argument("malformed transaction id '" + std::string(text) + "'");
}

namespace {
struct Hasher {
    std::uint64_t state = 0xcbf29ce484222325ULL;
    void add(std::uint64_t word) { state = mix64(state ^ word); }
};
}  // namespace

Digest compute_digest(const Vertex& v) {
    Hasher h;
    h.add(v.id.row);
    h.add(v.id.column);
    h.add(v.transactions.size());
    for (const TxId tx : v.transactions) h.add(tx.raw());
    h.add(v.strong_edges.size());
    for (const VertexId e : v.strong_edges) h.add((static_cast<std::uint64_t>(e.row) << 32) | e.column);
    h.add(v.weak_edges.size());
    for (const VertexId e : v.weak_edges) h.add((static_cast<std::uint64_t>(e.row) << 32) | e.column);
    return h.state;
}

VertexPtr make_vertex(VertexId id, std::vector<TxId> transactions, std::vector<VertexId> strong_edges,
                      std::vector<VertexId> weak_edges) {
    auto v = std::make_shared<Vertex>();
    v->id = id;
    v->transactions = std::move(transactions);
    v->strong_edges = std::move(strong_edges);
    v->weak_edges = std::move(weak_edges);
    std::sort(v->strong_edges.begin(), v->strong_edges.end());
    std::sort(v->weak_edges.begin(), v->weak_edges.end());
    v->digest = compute_digest(*v);
    return v;
}

VertexPtr make_genesis(NodeId row) {
    return make_vertex(VertexId{row, 0}, {}, {}, {});
}

bool satisfies_edge_caps(const Vertex& v, std::uint32_t n, std::uint32_t f) {
    if (v.is_genesis()) return v.strong_edges.empty() && v.weak_edges.empty();
    if (v.strong_edges.size() < 2 * f + 1 || v.strong_edges.size() > n) return false;
    if (v.weak_edges.size() > f) return false;
    for (const VertexId e : v.strong_edges) {
        if (e.column + 1 != v.column() || e.row >= n) return false;
    }
    for (const VertexId e : v.weak_edges) {
        if (e.column + 1 >= v.column() || e.row >= n) return false;
    }
    return true;
}

}  // namespace dagfair
