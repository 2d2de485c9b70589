#include <doctest.h>

#include <set>

#include "dagfair/errors.hpp"
#include "dagfair/workload.hpp"

using namespace dagfair;
using namespace dagfair::workload;

TEST_CASE("fanout specs") {
    CHECK(parse_fanout("1", 4, 13) == 1);
    CHECK(parse_fanout("f+1", 4, 13) == 5);
    CHECK(parse_fanout("2f+1", 4, 13) == 9);
    CHECK(parse_fanout("3f+1", 4, 13) == 13);
    CHECK(parse_fanout("7", 4, 13) == 7);
    CHECK_THROWS_AS(parse_fanout("14", 4, 13), ConfigError);
    CHECK_THROWS_AS(parse_fanout("0", 4, 13), ConfigError);
    CHECK_THROWS_AS(parse_fanout("lots", 4, 13), ConfigError);
}

TEST_CASE("recipients are distinct and uniform") {
    Rng rng = make_rng(1, Stream::client, 0);
    std::vector<double> hits(13, 0);
    const int rounds = 13000;
    for (int i = 0; i < rounds; ++i) {
        const auto r = choose_recipients(13, 5, rng);
        REQUIRE(r.size() == 5);
        CHECK(std::set<NodeId>(r.begin(), r.end()).size() == 5);
        for (auto n : r) hits[n] += 1;
    }
    const double expected = rounds * 5.0 / 13.0;
    double chi = 0;
    for (double h : hits) chi += (h - expected) * (h - expected) / expected;
    CHECK(chi < 32.91);
}

TEST_CASE("solutions are sent after the reveal and land after the send") {
    const auto profile = DelayProfile::make(ProfileKind::quick);
    Rng rng = make_rng(2, Stream::client, 1);
    const auto s = solve_puzzle(1, 4, 13, 13, profile, rng);
    CHECK(s.tx == TxId::game(1, 4));
    CHECK(s.sent > reveal_tick(4, 200));
    CHECK(s.arrivals.size() == 13);
    for (auto [node, tick] : s.arrivals) {
        CHECK(node < 13);
        CHECK(tick > s.sent);
    }
}

TEST_CASE("third-party traffic has the configured rate") {
    ThirdPartySource src(0.4, 13, make_rng(9, Stream::third_party, 0));
    CHECK(src.active());
    std::vector<double> per_node(13, 0);
    Tick last = 0;
    while (src.next_tick() <= 100000) {
        CHECK(src.next_tick() >= last);
        last = src.next_tick();
        auto [tx, node] = src.pop();
        CHECK_FALSE(tx.is_game());
        per_node[node] += 1;
    }
    CHECK(static_cast<double>(src.generated()) == doctest::Approx(40000).epsilon(0.02));
    CHECK_FALSE(ThirdPartySource(0.0, 13, make_rng(1, Stream::third_party, 0)).active());
    CHECK_THROWS_AS(ThirdPartySource(-1.0, 13, make_rng(1, Stream::third_party, 0)), ConfigError);
}
