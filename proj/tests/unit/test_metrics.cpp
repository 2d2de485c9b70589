#include <doctest.h>

#include <sstream>

#include "dagfair/event_log.hpp"
#include "dagfair/metrics.hpp"

using namespace dagfair;
using namespace dagfair::metrics;
using log::EventRecord;
using log::Kind;

namespace {

EventRecord ev(Tick t, Kind k, std::optional<NodeId> node, TxId tx, std::optional<std::uint64_t> aux = {}) {
    return {t, k, node, tx.to_string(), aux};
}

EventRecord wave(Tick t, NodeId node, std::uint64_t w) { return {t, Kind::wave_formed, node, "00", w}; }

}  // namespace

TEST_CASE("csv header is frozen") {
    CHECK(kCsvSchemaVersion == 1);
    CHECK(csv_header() ==
          "schema_version,seed,n,f,byzantine,clients,puzzles,order,profile,fanout,third_party_rate,pariah_depth,"
          "target_client,taint_scope,tick_ceiling,puzzle_period,solve_mean,client_delay_mean,score_target,scores,"
          "solved_puzzles,of_snd_fin,of_snd_wav,of_rec_fin,of_rec_wav,of_ini_fin,of_ini_wav,of_dlv_fin,of_dlv_wav,"
          "pairs,duplications,waves,wave_tx_q1,wave_tx_median,wave_tx_q3,vertices,brb_init,brb_echo,brb_ready,"
          "brb_suppressed,final_tick,events,undrained,partial,consistent,structural_violations,brb_violations");
    CHECK(csv_columns().size() == 47);
}

TEST_CASE("json lines round-trip") {
    const std::vector<EventRecord> records{
        ev(3, Kind::send, std::nullopt, TxId::game(1, 2)),
        ev(9, Kind::finalize, 0, TxId::game(1, 2), 17),
        {12, Kind::wave_formed, 4, log::digest_hex(0xabcdef), 3},
        ev(13, Kind::recv, 2, TxId::third_party(5)),
    };
    CHECK(log::to_json_line(records[0]) == R"({"tick":3,"kind":"SEND","tx":"c1:2"})");
    CHECK(log::to_json_line(records[1]) == R"({"tick":9,"kind":"FINALIZE","node":0,"tx":"c1:2","aux":17})");
    CHECK(log::digest_hex(0xabcdef) == "0000000000abcdef");
    std::stringstream buf;
    log::write_jsonl(buf, records);
    CHECK(log::read_jsonl(buf) == records);
}

TEST_CASE("malformed log lines report their line number") {
    std::stringstream buf(R"({"tick":1,"kind":"SEND","tx":"c0:1"})"
                          "\n\nnot json\n");
    try {
        log::read_jsonl(buf);
        FAIL("expected an error");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    CHECK_THROWS_AS(log::parse_kind("BOGUS"), std::invalid_argument);
}

TEST_CASE("winner is the smallest reference position") {
    std::vector<Lifecycle> k(3);
    CHECK_FALSE(decide_winner(k).has_value());
    k[0].position = 9;
    k[2].position = 4;
    CHECK(decide_winner(k) == 2u);
}

TEST_CASE("synthetic log: scores, pairs and violation counts") {
    // n = 4, two clients, two puzzles, reference node 0.
    const AuditParams p{4, 2, 2, 0};
    const TxId a1 = TxId::game(0, 1), b1 = TxId::game(1, 1), a2 = TxId::game(0, 2), b2 = TxId::game(1, 2);
    std::vector<EventRecord> logv{
        // puzzle 1: a sent first but b finalizes first, same wave.
        ev(10, Kind::send, std::nullopt, a1),
        ev(12, Kind::send, std::nullopt, b1),
        // a received first at 3 of 4 nodes.
        ev(13, Kind::recv, 0, a1), ev(13, Kind::recv, 1, a1), ev(13, Kind::recv, 2, a1), ev(20, Kind::recv, 3, a1),
        ev(14, Kind::recv, 0, b1), ev(14, Kind::recv, 1, b1), ev(14, Kind::recv, 2, b1), ev(15, Kind::recv, 3, b1),
        // puzzle 2: only a is ever finalized.
        ev(210, Kind::send, std::nullopt, a2),
        ev(215, Kind::send, std::nullopt, b2),
        wave(100, 0, 0),
        ev(100, Kind::finalize, 0, b1, 0),
        ev(100, Kind::finalize, 0, a1, 1),
        // Another node's finalization is ignored.
        ev(100, Kind::finalize, 1, a1, 0),
        wave(300, 0, 1),
        ev(300, Kind::finalize, 0, a2, 2),
    };
    const auto audit_result = audit(logv, p);
    CHECK(audit_result.decided == 2);
    CHECK(audit_result.wins == std::vector<std::uint32_t>{1, 1});
    CHECK(audit_result.scores == std::vector<double>{1.0, 1.0});
    CHECK(audit_result.pairs == 2);
    CHECK(audit_result.waves == 2);
    CHECK(audit_result.violation(Alpha::send, Beta::finalize) == 1);
    CHECK(audit_result.violation(Alpha::send, Beta::wave) == 0);
    CHECK(audit_result.violation(Alpha::receive, Beta::finalize) == 1);
    CHECK(audit_result.violation(Alpha::initiate, Beta::finalize) == 0);

    const auto lives = reconstruct(logv, p);
    CHECK(lives[0][0].position == 1u);
    CHECK(lives[0][0].wave == 0u);
    CHECK(lives[1][0].wave == 1u);
    CHECK_FALSE(lives[1][1].position.has_value());
    CHECK(lives[0][0].received[3] == 20);
}

TEST_CASE("receive order needs a strict majority") {
    // Two of four nodes is not a majority.
    std::vector<std::vector<Lifecycle>> l(1, std::vector<Lifecycle>(2));
    for (auto& life : l[0]) {
        life.received.assign(4, 0);
        life.initiated.assign(4, Lifecycle::kNever);
        life.delivered.assign(4, Lifecycle::kNever);
    }
    l[0][0].received = {1, 1, 9, 9};
    l[0][1].received = {5, 5, 5, 5};
    l[0][0].position = 1;
    l[0][1].position = 0;
    l[0][0].sent = l[0][1].sent = 0;
    CHECK(count_violations(l, Alpha::receive, Beta::finalize, 4) == 0);
    l[0][0].received = {1, 1, 1, 9};
    CHECK(count_violations(l, Alpha::receive, Beta::finalize, 4) == 1);
    // Equal send ticks order nothing.
    CHECK(count_violations(l, Alpha::send, Beta::finalize, 4) == 0);
}

TEST_CASE("quartiles interpolate linearly") {
    const auto q = quartiles({4, 1, 3, 2});
    CHECK(q[0] == doctest::Approx(1.75));
    CHECK(q[1] == doctest::Approx(2.5));
    CHECK(q[2] == doctest::Approx(3.25));
    CHECK(quartiles({}) == std::array<double, 3>{0, 0, 0});
    CHECK(quartiles({7})[1] == 7);
}

TEST_CASE("duplications count extra copies") {
    const TxId a = TxId::game(0, 1), b = TxId::game(1, 1);
    CHECK(count_duplications({{a, b}, {a}, {a}, {}}) == 2);
    CHECK(count_duplications({{a}, {b}}) == 0);
}

TEST_CASE("number formatting is shortest round-trip") {
    CHECK(format_double(0.25) == "0.25");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(0.1) == "0.1");
}
