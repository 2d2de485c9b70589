#include <benchmark/benchmark.h>

#include "dagfair/adversary.hpp"
#include "dagfair/dagrider.hpp"
#include "dagfair/fixtures.hpp"
#include "dagfair/ordering.hpp"
#include "dagfair/simulation.hpp"

using namespace dagfair;

namespace {

// A fully connected DAG of `columns` columns; wave 0..k members come from it.
dag::DagStore full_dag(std::uint32_t n, std::uint32_t columns) {
    dag::DagStore s(n, (n - 1) / 3);
    for (std::uint32_t c = 1; c <= columns; ++c) {
        std::vector<VertexId> prev;
        for (NodeId r = 0; r < n; ++r) prev.push_back({r, c - 1});
        for (NodeId r = 0; r < n; ++r) s.deliver(make_vertex({r, c}, {TxId::game(r % 3, c)}, prev));
    }
    return s;
}

void BM_VoteCountWave(benchmark::State& state) {
    const auto n = static_cast<std::uint32_t>(state.range(0));
    const auto store = full_dag(n, 9);
    const Vertex* leader = store.find({0, 9});
    const auto members = dag::causal_members(store, *leader);
    for (auto _ : state) benchmark::DoNotOptimize(order::order_vote_count(members, n));
    state.SetLabel(std::to_string(members.size()) + " members");
}
BENCHMARK(BM_VoteCountWave)->Arg(4)->Arg(13)->Arg(19);

void BM_PerColumnShuffleWave(benchmark::State& state) {
    const auto n = static_cast<std::uint32_t>(state.range(0));
    const auto store = full_dag(n, 9);
    const auto members = dag::causal_members(store, *store.find({0, 9}));
    for (auto _ : state) benchmark::DoNotOptimize(order::order_per_column_shuffle(members));
}
BENCHMARK(BM_PerColumnShuffleWave)->Arg(13);

void BM_PariahRank(benchmark::State& state) {
    const auto store = full_dag(13, 12);
    const Vertex* v = store.find({5, 12});
    for (auto _ : state) benchmark::DoNotOptimize(adv::pariah_rank(store, *v, 0, static_cast<std::uint32_t>(state.range(0))));
}
BENCHMARK(BM_PariahRank)->Arg(2)->Arg(4);

void BM_Run(benchmark::State& state) {
    SimConfig cfg;
    cfg.puzzles = static_cast<std::uint32_t>(state.range(0));
    cfg.byzantine = static_cast<std::uint32_t>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(run(cfg).audit.decided);
    state.SetItemsProcessed(state.iterations() * cfg.puzzles);
}
BENCHMARK(BM_Run)->Args({50, 0})->Args({50, 4})->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
