#include "dagfair/probes.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "dagfair/adversary.hpp"
#include "dagfair/brb.hpp"
#include "dagfair/dag_store.hpp"
#include "dagfair/dagrider.hpp"
#include "dagfair/fixtures.hpp"
#include "dagfair/ordering.hpp"
#include "dagfair/rng.hpp"

namespace dagfair::probes {

namespace {

constexpr std::uint32_t kInf = order::kNoVote;

bool table_matches(const order::VoteTable& table, const std::vector<PrintedRow>& printed) {
    for (const auto& row : printed) {
        auto it = std::find_if(table.members.begin(), table.members.end(),
                               [&](const Vertex* v) { return v->id == row.vertex; });
        if (it == table.members.end()) return false;
        const auto i = static_cast<std::size_t>(it - table.members.begin());
        if (table.cells[i] != row.votes) return false;
    }
    return true;
}

}  // namespace

std::vector<SabotageRow> bracha_sabotage(std::uint32_t n, std::uint32_t f, const std::vector<std::uint32_t>& bs,
                                         const std::vector<double>& xs, std::uint64_t trials, std::uint64_t seed) {
    if (trials < 10000) throw std::invalid_argument("at least 10^4 trials are required");
    const brb::Thresholds t = brb::thresholds(n, f);
    std::vector<SabotageRow> out;
    std::uint64_t point = 0;
    for (const std::uint32_t b : bs) {
        for (const double x : xs) {
            const auto analytic = adv::analytic_delivery_prob(x, n, f, b);
            Rng rng = make_rng(seed, Stream::probe, point++);
            const std::uint32_t honest = n - b;
            std::binomial_distribution<std::uint32_t> echoes(honest, x);
            std::uint64_t delivered = 0;
            for (std::uint64_t trial = 0; trial < trials; ++trial) {
                std::uint32_t readies = 0;
                for (std::uint32_t j = 0; j < honest; ++j) {
                    if (echoes(rng) >= t.echo_to_ready) ++readies;
                }
                if (readies >= t.ready_to_deliver) ++delivered;
            }
            out.push_back({b, x, analytic.y, analytic.z, static_cast<double>(delivered) / static_cast<double>(trials)});
        }
    }
    return out;
}

WeakEdgeReport weak_edge_scenario(std::uint64_t seed) {
    const auto fx = fixtures::stalled_row();
    constexpr NodeId proposer = 2;
    dag::DagStore store(4, 1);
    for (const auto& v : fx.vertices) {
        if (!v->is_genesis()) store.deliver(v);
    }
    for (int i = 0; i < 3; ++i) store.advance_column();
    store.push_transaction(TxId::third_party(0));

    std::vector<VertexId> strong;
    for (const Vertex* v : store.column(3)) strong.push_back(v->id);
    WeakEdgeReport report;
    report.orphans = static_cast<std::uint32_t>(dag::find_orphans(store, 4, strong).size());
    report.cap = store.f();
    Rng rng = make_rng(seed, Stream::probe, 0);
    const auto proposal = dag::try_propose(store, proposer, rng);
    if (!proposal) return report;
    report.weak_edges = (*proposal)->weak_edges;
    report.lowest_column = std::all_of(report.weak_edges.begin(), report.weak_edges.end(),
                                       [](VertexId e) { return e.column == 0; });
    report.pass = report.orphans > report.cap && report.weak_edges.size() == report.cap && report.lowest_column;
    return report;
}

const std::vector<PrintedRow>& printed_example_table() {
    static const std::vector<PrintedRow> rows{
        {{0, 1}, {1, 2, 2, 2}},          {{0, 2}, {2, kInf, 4, 3}},       {{0, 3}, {3, kInf, 4, kInf}},
        {{1, 2}, {3, 2, 3, 3}},          {{2, 1}, {2, 2, 1, 2}},          {{2, 2}, {3, kInf, 2, kInf}},
        {{2, 3}, {kInf, kInf, 3, kInf}}, {{2, 4}, {kInf, kInf, 4, kInf}}, {{3, 1}, {kInf, kInf, 3, 1}},
        {{3, 2}, {kInf, kInf, 3, 2}},    {{3, 3}, {kInf, kInf, 4, 3}},
    };
    return rows;
}

const std::vector<PrintedRow>& printed_cycle_table() {
    static const std::vector<PrintedRow> rows{
        {{0, 4}, {4, kInf, 6, 5}},
        {{2, 4}, {5, kInf, 4, kInf}},
        {{3, 4}, {kInf, kInf, 5, 4}},
    };
    return rows;
}

FixtureReport vote_table_fixtures() {
    FixtureReport report;

    const auto example = fixtures::example_wave();
    const auto t5 = order::build_vote_table(example.pointers(), example.rows);
    report.example_table = t5.members.size() == printed_example_table().size() && table_matches(t5, printed_example_table());
    {
        std::vector<Digest> keys;
        for (const Vertex* v : t5.members) keys.push_back(v->digest);
        const auto ranked = order::condense_and_rank(order::build_precedence(t5), keys);
        std::vector<std::uint32_t> sizes(ranked.scc_count, 0);
        for (const auto s : ranked.scc_of) ++sizes[s];
        report.example_largest_scc = *std::max_element(sizes.begin(), sizes.end());
        report.example_max_rank = *std::max_element(ranked.scc_rank.begin(), ranked.scc_rank.end());
    }

    const auto cycle = fixtures::condorcet_cycle();
    const auto t7 = order::build_vote_table(cycle.pointers(), cycle.rows);
    report.cycle_table = table_matches(t7, printed_cycle_table());
    {
        std::vector<Digest> keys;
        for (const Vertex* v : t7.members) keys.push_back(v->digest);
        const auto ranked = order::condense_and_rank(order::build_precedence(t7), keys);
        std::vector<std::size_t> idx;
        for (const auto& row : printed_cycle_table()) {
            for (std::size_t i = 0; i < t7.members.size(); ++i) {
                if (t7.members[i]->id == row.vertex) idx.push_back(i);
            }
        }
        const bool same = idx.size() == 3 && ranked.scc_of[idx[0]] == ranked.scc_of[idx[1]] &&
                          ranked.scc_of[idx[1]] == ranked.scc_of[idx[2]];
        if (same) {
            report.cycle_scc_size = static_cast<std::uint32_t>(
                std::count(ranked.scc_of.begin(), ranked.scc_of.end(), ranked.scc_of[idx[0]]));
        }
    }
    report.pass = report.example_table && report.cycle_table && report.cycle_scc_size == 3;
    return report;
}

}  // namespace dagfair::probes
