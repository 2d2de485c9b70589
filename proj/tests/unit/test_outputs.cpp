#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "dagfair/dot_export.hpp"
#include "dagfair/errors.hpp"
#include "dagfair/fixtures.hpp"
#include "dagfair/metrics.hpp"
#include "dagfair/simulation.hpp"
#include "dagfair/sweep.hpp"

using namespace dagfair;
namespace fs = std::filesystem;

namespace {

std::set<std::string> edges_in(const std::string& dot, const std::string& colour) {
    std::set<std::string> out;
    const std::regex re(R"((v\d+_\d+) -> (v\d+_\d+) \[color=)" + colour);
    for (std::sregex_iterator it(dot.begin(), dot.end(), re), end; it != end; ++it) {
        out.insert((*it)[1].str() + ">" + (*it)[2].str());
    }
    return out;
}

SweepSpec spec_of(const std::string& text) {
    std::istringstream in(text);
    return parse_sweep(in);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "dagfair-tests";
    fs::create_directories(dir);
    const auto p = dir / name;
    fs::remove(p);
    return p;
}

}  // namespace

TEST_CASE("dot of a genesis-only store") {
    const dag::DagStore s(4, 1);
    const auto dot = export_dot(s, {});
    CHECK(std::count(dot.begin(), dot.end(), '\n') > 0);
    CHECK(edges_in(dot, "red").empty());
    CHECK(edges_in(dot, "blue").empty());
    for (int r = 0; r < 4; ++r) CHECK(dot.find("v" + std::to_string(r) + "_0 [label") != std::string::npos);
}

TEST_CASE("dot of the three-node pariah fixture has the expected edges") {
    const auto fx = fixtures::pariah_three_nodes();
    DotOptions o;
    const auto dot = export_dot(fx.pointers(), o);
    const auto strong = edges_in(dot, "red");
    std::set<std::string> expected;
    for (const auto& v : fx.vertices) {
        for (auto e : v->strong_edges) {
            expected.insert("v" + std::to_string(v->id.row) + "_" + std::to_string(v->id.column) + ">v" +
                            std::to_string(e.row) + "_" + std::to_string(e.column));
        }
    }
    CHECK(strong == expected);
    CHECK(strong.contains("v1_2>v2_1"));
    CHECK_FALSE(strong.contains("v1_2>v0_1"));
}

TEST_CASE("dot marks weak edges, leaders and waves; output is stable") {
    const auto fx = fixtures::example_wave();
    DotOptions o;
    o.leaders = {{2, 4}};
    for (const auto& v : fx.vertices) o.wave_of[v->id] = 0;
    const auto dot = export_dot(fx.pointers(), o);
    CHECK(edges_in(dot, "blue") == std::set<std::string>{"v2_3>v3_1", "v3_3>v3_1"});
    CHECK(dot.find("v2_4 [label=\"(2,4) 0 tx\", fillcolor=\"#fbb4ae\", penwidth=3]") != std::string::npos);
    auto reversed = fx.pointers();
    std::reverse(reversed.begin(), reversed.end());
    CHECK(export_dot(reversed, o) == dot);

    SimConfig cfg;
    cfg.puzzles = 3;
    const auto r = run(cfg);
    const auto again = run(cfg);
    CHECK(export_dot(r.nodes[1].store, r.nodes[1].leaders) == export_dot(again.nodes[1].store, again.nodes[1].leaders));
}

TEST_CASE("sweep grid expansion") {
    const auto spec = spec_of("byzantine = 0,1,2,3,4\norder = full-shuffle, per-column-shuffle, vote-count\n"
                              "profile = quick, slow\nrepetitions = 2\nseed = 10\n");
    const auto points = expand(spec);
    CHECK(points.size() == 60);
    CHECK(points[0].config.seed == 10);
    CHECK(points[1].config.seed == 11);
    CHECK(points[2].config.byzantine == 1);

    CHECK(expand(spec_of("fanout = 1, f+1, 2f+1, 3f+1\nprofile = slow\n")).size() == 4);
    const auto ns = expand(spec_of("n = 10, 13, 16, 19\n"));
    REQUIRE(ns.size() == 4);
    CHECK(ns[3].config.f == 6);

    CHECK_THROWS_AS(expand(spec_of("byzantine = 0,1,2\nmax_points = 2\n")), ConfigError);
    CHECK_THROWS_AS(spec_of("colour = red\n"), ConfigError);

    const auto mixed = expand(spec_of("n = 4, 13\nbyzantine = 0, 4\n"));
    REQUIRE(mixed.size() == 4);
    CHECK(mixed[1].error.find("byzantine") != std::string::npos);
    CHECK(mixed[3].error.empty());
}

TEST_CASE("run key is the config echo") {
    const std::string row = "1,7,13,4,0,3,10,vote-count,quick,13,0.4,2,0,direct,20000,200,100,20,1.2,x";
    CHECK(run_key(row) == "1,7,13,4,0,3,10,vote-count,quick,13,0.4,2,0,direct,20000,200,100,20");
}

TEST_CASE("interrupted sweep resumes to the same csv") {
    const auto spec = spec_of("puzzles = 3\nn = 4\nbyzantine = 0, 1\norder = full-shuffle, vote-count\n"
                              "repetitions = 2\n");
    const auto full = scratch("full.csv");
    const auto part = scratch("part.csv");
    const auto a = run_sweep(spec, full.string(), 2);
    CHECK(a.written == 8);
    CHECK(a.failures.empty());

    const auto first = run_sweep(spec, part.string(), 3, nullptr, 3);
    CHECK(first.written == 3);
    const auto rest = run_sweep(spec, part.string(), 1);
    CHECK(rest.skipped == 3);
    CHECK(rest.written == 5);
    CHECK(slurp(part) == slurp(full));

    const auto noop = run_sweep(spec, full.string(), 2);
    CHECK(noop.written == 0);
    CHECK(noop.skipped == 8);
}

TEST_CASE("sweep records failing points and continues") {
    const auto out = scratch("mixed.csv");
    const auto r = run_sweep(spec_of("puzzles = 2\nn = 4, 13\nbyzantine = 0, 4\n"), out.string(), 1);
    CHECK(r.written == 3);
    REQUIRE(r.failures.size() == 1);
    CHECK(r.failures[0].find("point 1") != std::string::npos);
}
