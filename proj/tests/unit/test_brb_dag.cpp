#include <doctest.h>

#include <deque>

#include "dagfair/brb.hpp"
#include "dagfair/dag_store.hpp"
#include "dagfair/vertex.hpp"

using namespace dagfair;

namespace {

// Floods messages between endpoints in FIFO order; nodes in `silent` drop
// everything they would send.
struct Network {
    std::vector<brb::Endpoint> nodes;
    std::vector<bool> silent;
    std::vector<int> deliveries;

    Network(std::uint32_t n, std::uint32_t f) : silent(n, false), deliveries(n, 0) {
        for (NodeId i = 0; i < n; ++i) nodes.emplace_back(i, n, f);
    }

    void run(NodeId author, const VertexPtr& v) {
        std::deque<std::pair<NodeId, brb::Message>> queue;  // (destination, message)
        auto flood = [&](const brb::Message& m) {
            if (silent[m.sender]) return;
            for (NodeId d = 0; d < nodes.size(); ++d) queue.emplace_back(d, m);
        };
        flood(nodes[author].rbcast(v));
        while (!queue.empty()) {
            auto [dest, msg] = queue.front();
            queue.pop_front();
            auto out = nodes[dest].on_message(msg);
            if (out.delivered) ++deliveries[dest];
            for (const auto& m : out.outbound) flood(m);
        }
    }
};

VertexPtr v_at(NodeId row, std::uint32_t col, std::vector<VertexId> strong, std::vector<TxId> txs = {},
               std::vector<VertexId> weak = {}) {
    return make_vertex({row, col}, std::move(txs), std::move(strong), std::move(weak));
}

std::vector<VertexId> all_rows(std::uint32_t n, std::uint32_t col) {
    std::vector<VertexId> out;
    for (NodeId r = 0; r < n; ++r) out.push_back({r, col});
    return out;
}

}  // namespace

TEST_CASE("Bracha quorum sizes") {
    CHECK(brb::thresholds(4, 1) == brb::Thresholds{3, 2, 3});
    CHECK(brb::thresholds(13, 4) == brb::Thresholds{9, 5, 9});
    CHECK(brb::thresholds(25, 8) == brb::Thresholds{17, 9, 17});
    CHECK_THROWS_AS(brb::thresholds(6, 2), std::invalid_argument);
}

TEST_CASE("every node delivers an honest broadcast exactly once") {
    Network net(4, 1);
    net.run(0, v_at(0, 1, all_rows(4, 0)));
    for (int d : net.deliveries) CHECK(d == 1);
    for (auto& e : net.nodes) CHECK(e.deliveries() == 1);
}

TEST_CASE("f silent nodes cannot stop delivery, f+1 can") {
    SUBCASE("one silent of four") {
        Network net(4, 1);
        net.silent[3] = true;
        net.run(0, v_at(0, 1, all_rows(4, 0)));
        for (NodeId i = 0; i < 3; ++i) CHECK(net.deliveries[i] == 1);
    }
    SUBCASE("two silent of four") {
        Network net(4, 1);
        net.silent[2] = net.silent[3] = true;
        net.run(0, v_at(0, 1, all_rows(4, 0)));
        for (int d : net.deliveries) CHECK(d == 0);
    }
}

TEST_CASE("instance ignores duplicate senders and detects equivocation") {
    const auto t = brb::thresholds(4, 1);
    const auto v = v_at(1, 1, all_rows(4, 0));
    brb::Instance inst({1, 1}, 0);
    brb::Message echo{brb::Kind::echo, {1, 1}, v->digest, 2, nullptr};
    inst.handle(echo, t);
    inst.handle(echo, t);
    CHECK(inst.echo_count() == 1);
    brb::Message bad{brb::Kind::echo, {1, 1}, v->digest + 1, 3, nullptr};
    CHECK_THROWS_AS(inst.handle(bad, t), brb::EquivocationError);
}

TEST_CASE("ready amplification after f+1 readies") {
    const auto t = brb::thresholds(4, 1);
    const auto v = v_at(1, 1, all_rows(4, 0));
    brb::Instance inst({1, 1}, 0);
    inst.handle({brb::Kind::ready, {1, 1}, v->digest, 1, nullptr}, t);
    CHECK_FALSE(inst.sent_ready());
    auto out = inst.handle({brb::Kind::ready, {1, 1}, v->digest, 2, nullptr}, t);
    CHECK(inst.sent_ready());
    REQUIRE(out.outbound.size() == 1);
    CHECK(out.outbound[0].kind == brb::Kind::ready);
    // Delivery needs the payload as well as 2f+1 readies.
    out = inst.handle({brb::Kind::ready, {1, 1}, v->digest, 3, nullptr}, t);
    CHECK_FALSE(out.delivered);
    out = inst.handle({brb::Kind::init, {1, 1}, v->digest, 1, v}, t);
    CHECK(out.delivered == v);
    CHECK(inst.delivered());
}

TEST_CASE("second broadcast on one slot is rejected") {
    brb::Endpoint e(0, 4, 1);
    e.rbcast(v_at(0, 1, all_rows(4, 0)));
    CHECK_THROWS_AS(e.rbcast(v_at(0, 1, all_rows(4, 0), {TxId::game(0, 1)})), brb::DuplicateBroadcastError);
}

TEST_CASE("vertex digest and edge caps") {
    const auto a = v_at(0, 1, all_rows(4, 0), {TxId::game(0, 1)});
    const auto b = v_at(0, 1, all_rows(4, 0), {TxId::game(0, 2)});
    CHECK(a->digest != b->digest);
    CHECK(a->digest == v_at(0, 1, all_rows(4, 0), {TxId::game(0, 1)})->digest);
    CHECK(satisfies_edge_caps(*a, 4, 1));
    CHECK_FALSE(satisfies_edge_caps(*v_at(0, 1, {{0, 0}, {1, 0}}), 4, 1));
    CHECK_FALSE(satisfies_edge_caps(*v_at(0, 3, all_rows(4, 2), {}, {{1, 0}, {2, 0}}), 4, 1));
    CHECK(satisfies_edge_caps(*v_at(0, 3, all_rows(4, 2), {}, {{1, 0}}), 4, 1));
    CHECK_FALSE(satisfies_edge_caps(*v_at(0, 3, all_rows(4, 2), {}, {{1, 2}}), 4, 1));
    CHECK(satisfies_edge_caps(*make_genesis(2), 4, 1));
}

TEST_CASE("store buffers until parents arrive, then cascades") {
    dag::DagStore s(4, 1);
    CHECK(s.vertex_count() == 4);
    CHECK(s.column_size(0) == 4);

    const auto c2 = v_at(0, 2, {{0, 1}, {1, 1}, {2, 1}});
    CHECK(s.deliver(c2).empty());
    CHECK(s.is_buffered({0, 2}));
    CHECK(s.deliver(v_at(0, 1, all_rows(4, 0))).size() == 1);
    CHECK(s.deliver(v_at(1, 1, all_rows(4, 0))).size() == 1);
    const auto entered = s.deliver(v_at(2, 1, all_rows(4, 0)));
    REQUIRE(entered.size() == 2);
    CHECK(entered[0]->id == VertexId{2, 1});
    CHECK(entered[1]->id == VertexId{0, 2});
    CHECK(s.buffered_count() == 0);
    CHECK(s.top_column() == 2);
    // Duplicates are ignored.
    CHECK(s.deliver(c2).empty());
    CHECK(s.unreferenced().contains({0, 2}));
    CHECK_FALSE(s.unreferenced().contains({3, 0}));
    CHECK_FALSE(s.unreferenced().contains({0, 1}));
}

TEST_CASE("mempool marks proposed transactions and purges included ones") {
    dag::DagStore s(4, 1);
    CHECK(s.push_transaction(TxId::game(0, 1)));
    CHECK_FALSE(s.push_transaction(TxId::game(0, 1)));
    CHECK(s.push_transaction(TxId::game(1, 1)));
    CHECK(s.proposable_count() == 2);
    CHECK(s.proposable_count([](TxId t) { return t.client() != 0; }) == 1);
    const auto txs = s.extract_for_proposal();
    CHECK(txs == std::vector<TxId>{TxId::game(0, 1), TxId::game(1, 1)});
    CHECK(s.proposable_count() == 0);
    CHECK(s.mempool().size() == 2);

    s.deliver(v_at(1, 1, all_rows(4, 0), {TxId::game(0, 1)}));
    CHECK(s.in_dag(TxId::game(0, 1)));
    CHECK(s.mempool().size() == 1);
    CHECK_FALSE(s.push_transaction(TxId::game(0, 1)));
}
