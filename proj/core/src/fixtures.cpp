#include "dagfair/fixtures.hpp"

#include <initializer_list>

namespace dagfair::fixtures {

namespace {

struct Spec {
    VertexId id;
    std::vector<VertexId> strong;
    std::vector<VertexId> weak;
    std::vector<TxId> txs;
};

Fixture build(std::uint32_t rows, const std::vector<Spec>& specs, bool genesis) {
    Fixture f;
    f.rows = rows;
    if (genesis) {
        for (NodeId r = 0; r < rows; ++r) f.vertices.push_back(make_genesis(r));
    }
    for (const auto& s : specs) f.vertices.push_back(make_vertex(s.id, s.txs, s.strong, s.weak));
    return f;
}

// Row letters for readability.
constexpr NodeId A = 0, B = 1, C = 2, D = 3;

TxId x(std::uint32_t k) { return TxId::game(k == 1 ? 0 : 1, k); }

}  // namespace

const Vertex* Fixture::find(VertexId id) const {
    for (const auto& v : vertices) {
        if (v->id == id) return v.get();
    }
    return nullptr;
}

std::vector<const Vertex*> Fixture::pointers() const {
    std::vector<const Vertex*> out;
    for (const auto& v : vertices) out.push_back(v.get());
    return out;
}

Fixture example_wave() {
    return build(4,
                 {
                     {{A, 1}, {}, {}, {}},
                     {{C, 1}, {}, {}, {}},
                     {{D, 1}, {}, {}, {}},
                     {{A, 2}, {{A, 1}, {C, 1}}, {}, {}},
                     {{B, 2}, {{A, 1}, {C, 1}}, {}, {}},
                     {{C, 2}, {{A, 1}, {C, 1}}, {}, {}},
                     {{D, 2}, {{A, 1}, {C, 1}}, {}, {}},
                     {{A, 3}, {{A, 2}, {B, 2}, {C, 2}}, {}, {}},
                     {{C, 3}, {{B, 2}, {C, 2}, {D, 2}}, {{D, 1}}, {}},
                     {{D, 3}, {{A, 2}, {B, 2}, {D, 2}}, {{D, 1}}, {}},
                     {{C, 4}, {{A, 3}, {C, 3}, {D, 3}}, {}, {}},
                 },
                 false);
}

Fixture condorcet_cycle() {
    return build(4,
                 {
                     {{0, 4}, {}, {}, {}},
                     {{1, 4}, {}, {}, {}},
                     {{2, 4}, {}, {}, {}},
                     {{3, 4}, {}, {}, {}},
                     {{0, 5}, {{0, 4}, {1, 4}, {2, 4}}, {}, {}},
                     {{2, 5}, {{1, 4}, {2, 4}, {3, 4}}, {}, {}},
                     {{3, 5}, {{0, 4}, {1, 4}, {3, 4}}, {}, {}},
                     {{2, 6}, {{0, 5}, {2, 5}, {3, 5}}, {}, {}},
                 },
                 false);
}

Fixture stalled_row() {
    const std::vector<VertexId> g{{A, 0}, {B, 0}, {C, 0}};
    const std::vector<VertexId> c1{{A, 1}, {B, 1}, {C, 1}};
    const std::vector<VertexId> c2{{A, 2}, {B, 2}, {C, 2}};
    return build(4,
                 {
                     {{A, 1}, g, {}, {}},
                     {{B, 1}, g, {}, {}},
                     {{C, 1}, g, {}, {}},
                     {{D, 1}, g, {}, {}},
                     {{A, 2}, c1, {}, {}},
                     {{B, 2}, c1, {}, {}},
                     {{C, 2}, c1, {}, {}},
                     {{D, 2}, c1, {}, {}},
                     {{A, 3}, c2, {}, {}},
                     {{B, 3}, c2, {}, {}},
                     {{C, 3}, c2, {}, {}},
                 },
                 true);
}

Fixture pariah_three_nodes() {
    return build(3,
                 {
                     {{A, 1}, {{A, 0}, {B, 0}}, {}, {x(1)}},
                     {{B, 1}, {{B, 0}, {C, 0}}, {}, {x(2)}},
                     {{C, 1}, {{C, 0}, {B, 0}}, {}, {x(2)}},
                     {{A, 2}, {{A, 1}, {B, 1}}, {}, {x(3)}},
                     {{B, 2}, {{B, 1}, {C, 1}}, {}, {x(3)}},
                     {{A, 3}, {{A, 2}, {B, 2}}, {}, {x(2), x(4)}},
                     {{B, 3}, {{A, 2}, {B, 2}}, {}, {x(4)}},
                     {{A, 4}, {{A, 3}, {B, 3}}, {}, {x(5)}},
                 },
                 true);
}

Fixture pariah_seven_nodes() {
    const TxId target = TxId::game(0, 1);
    const TxId other = TxId::game(1, 1);
    std::vector<VertexId> genesis;
    for (NodeId r = 0; r < 7; ++r) genesis.push_back({r, 0});
    auto column1 = [](std::initializer_list<NodeId> rows) {
        std::vector<VertexId> out;
        for (const NodeId r : rows) out.push_back({r, 1});
        return out;
    };
    std::vector<Spec> specs;
    for (NodeId r = 0; r < 7; ++r) {
        specs.push_back({{r, 1}, genesis, {}, {r == 0 ? target : other}});
    }
    specs.push_back({{0, 2}, column1({1, 2, 3, 4, 5}), {}, {other}});
    specs.push_back({{1, 2}, column1({1, 2, 3, 4, 5}), {}, {other}});
    specs.push_back({{2, 2}, column1({0, 1, 2, 3, 4}), {}, {other}});
    specs.push_back({{3, 2}, column1({1, 2, 3, 4, 5}), {}, {target}});
    specs.push_back({{4, 2}, column1({2, 3, 4, 5, 6}), {}, {other}});
    specs.push_back({{5, 2}, column1({1, 2, 3, 4, 5}), {}, {other}});
    specs.push_back({{6, 2}, column1({1, 2, 3, 4, 5}), {}, {other}});
    return build(7, specs, true);
}

}  // namespace dagfair::fixtures
