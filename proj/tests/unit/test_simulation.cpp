#include <doctest.h>

#include <sstream>

#include "dagfair/simulation.hpp"

using namespace dagfair;

namespace {

SimConfig small(std::initializer_list<std::pair<const char*, const char*>> settings) {
    SimConfig cfg;
    apply_setting(cfg, "puzzles", "8");
    for (auto [k, v] : settings) apply_setting(cfg, k, v);
    return cfg;
}

std::string jsonl(const RunResult& r) {
    std::ostringstream out;
    log::write_jsonl(out, r.log);
    return out.str();
}

}  // namespace

TEST_CASE("honest run finishes drained and consistent") {
    const auto r = run(small({{"n", "4"}}));
    CHECK(r.violations.empty());
    CHECK_FALSE(r.stats.partial);
    CHECK(r.stats.consistent);
    CHECK(r.audit.decided == 8);
    CHECK(r.stats.undrained == 0);
    for (const auto& node : r.nodes) CHECK(node.ledger.size() == r.nodes[0].ledger.size());
}

TEST_CASE("attacked run keeps every invariant") {
    for (const char* order : {"full-shuffle", "per-column-shuffle", "vote-count"}) {
        CAPTURE(order);
        const auto r = run(small({{"byzantine", "4"}, {"profile", "slow"}, {"order", order}}));
        CHECK(r.violations.empty());
        CHECK(r.stats.consistent);
        CHECK(r.stats.brb_suppressed > 0);
        CHECK(r.stats.structural_violations == 0);
    }
}

TEST_CASE("same seed, same bytes; different seed, different log") {
    const auto cfg = small({{"order", "vote-count"}, {"byzantine", "2"}});
    const auto a = run(cfg);
    const auto b = run(cfg);
    CHECK(jsonl(a) == jsonl(b));
    CHECK(a.csv_row() == b.csv_row());
    auto other = cfg;
    other.seed = cfg.seed + 1;
    CHECK(jsonl(run(other)) != jsonl(a));
}

TEST_CASE("perfect network gives a regular DAG") {
    const auto r = run(small({{"n", "4"}, {"profile", "perfect"}, {"third_party_rate", "0"}}));
    REQUIRE(r.violations.empty());
    for (const auto& node : r.nodes) {
        const auto& s = node.store;
        for (std::uint32_t c = 1; c <= s.top_column(); ++c) {
            for (const Vertex* v : s.column(c)) {
                CHECK(v->strong_edges.size() == 4);
                CHECK(v->weak_edges.empty());
            }
        }
    }
}

TEST_CASE("fanout one without background traffic never duplicates") {
    const auto r = run(small({{"fanout", "1"}, {"third_party_rate", "0"}}));
    CHECK(r.stats.duplications == 0);
    const auto full = run(small({{"fanout", "3f+1"}, {"third_party_rate", "0"}}));
    CHECK(full.stats.duplications > 0);
}

TEST_CASE("vote-count is echoed into the csv row") {
    const auto r = run(small({{"order", "vote-count"}}));
    CHECK(r.csv_row().find(",vote-count,") != std::string::npos);
}

TEST_CASE("tiny tick ceiling marks the run partial") {
    const auto r = run(small({{"tick_ceiling", "300"}}));
    CHECK(r.stats.partial);
    CHECK(r.stats.final_tick <= 300);
}
