#include "dagfair/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "dagfair/errors.hpp"

namespace dagfair::adv {

std::string_view to_string(TaintScope scope) {
    return scope == TaintScope::direct ? "direct" : "causal";
}

TaintScope parse_taint_scope(std::string_view text) {
    if (text == "direct") return TaintScope::direct;
    if (text == "causal") return TaintScope::causal;
    throw ConfigError("taint_scope", "expected 'direct' or 'causal', got '" + std::string(text) + "'");
}

void TaintIndex::observe(const Vertex& v) {
    Flags flags;
    for (const TxId tx : v.transactions) {
        if (tx.is_game() && tx.client() == target_) {
            flags.direct = true;
            break;
        }
    }
    flags.causal = flags.direct;
    auto inherit = [&](VertexId e) {
        auto it = flags_.find(e);
        if (it != flags_.end() && it->second.causal) flags.causal = true;
    };
    for (const VertexId e : v.strong_edges) inherit(e);
    for (const VertexId e : v.weak_edges) inherit(e);
    flags_[v.id] = flags;
}

bool TaintIndex::contains_target(VertexId id) const {
    auto it = flags_.find(id);
    return it != flags_.end() && it->second.direct;
}

bool TaintIndex::tainted(VertexId id) const {
    auto it = flags_.find(id);
    return it != flags_.end() && it->second.causal;
}

std::vector<std::uint32_t> pariah_rank(const dag::DagStore& store, const Vertex& v, ClientId target,
                                       std::uint32_t depth) {
    std::vector<std::uint32_t> rank(depth, 0);
    if (depth == 0) return rank;
    const std::uint32_t top = v.id.column;
    const std::uint32_t floor = top + 1 >= depth ? top + 1 - depth : 0;
    std::unordered_set<VertexId> seen{v.id};
    std::vector<const Vertex*> stack{&v};
    while (!stack.empty()) {
        const Vertex* u = stack.back();
        stack.pop_back();
        for (const TxId tx : u->transactions) {
            if (tx.is_game() && tx.client() == target) ++rank[top - u->id.column];
        }
        auto visit = [&](VertexId e) {
            if (e.column < floor || !seen.insert(e).second) return;
            if (const Vertex* next = store.find(e)) stack.push_back(next);
        };
        for (const VertexId e : u->strong_edges) visit(e);
        for (const VertexId e : u->weak_edges) visit(e);
    }
    return rank;
}

std::optional<VertexPtr> byz_propose(dag::DagStore& store, NodeId self, const AdversaryConfig& cfg, Rng& rng,
                                     const dag::ProposalOptions& options) {
    const std::uint32_t c = store.next_column();
    if (store.column_size(c - 1) < store.quorum()) return std::nullopt;
    const auto eligible = [&](TxId tx) { return !cfg.is_target(tx); };
    if (!options.allow_empty && store.proposable_count(eligible) == 0) return std::nullopt;

    struct Candidate {
        std::vector<std::uint32_t> rank;
        VertexId id;
    };
    std::vector<Candidate> candidates;
    for (const Vertex* v : store.column(c - 1)) {
        candidates.push_back({pariah_rank(store, *v, cfg.target_client, cfg.pariah_depth), v->id});
    }
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        return a.rank != b.rank ? a.rank < b.rank : a.id.row < b.id.row;
    });
    const auto clean = [](const std::vector<std::uint32_t>& r) {
        return std::all_of(r.begin(), r.end(), [](std::uint32_t x) { return x == 0; });
    };
    std::vector<VertexId> strong;
    for (const Candidate& cand : candidates) {
        if (strong.size() < store.quorum() || clean(cand.rank)) strong.push_back(cand.id);
    }

    std::vector<const Vertex*> orphans;
    for (const Vertex* o : dag::find_orphans(store, c, strong)) {
        if (clean(pariah_rank(store, *o, cfg.target_client, cfg.pariah_depth))) orphans.push_back(o);
    }
    auto weak = dag::select_weak_edges(std::move(orphans), store.f(), rng);
    auto txs = store.extract_for_proposal(eligible);
    store.advance_column();
    return make_vertex({self, c}, std::move(txs), std::move(strong), std::move(weak));
}

FilterVerdict byz_brb_filter(const brb::Message& outbound, const TaintIndex& taint, TaintScope scope) {
    if (outbound.kind == brb::Kind::init) return FilterVerdict::send;
    return taint.tainted(outbound.broadcast, scope) ? FilterVerdict::suppress : FilterVerdict::send;
}

double binomial_tail(std::uint32_t trials, double p, std::uint32_t k) {
    if (k == 0) return 1.0;
    if (k > trials) return 0.0;
    if (p <= 0.0) return 0.0;
    if (p >= 1.0) return 1.0;
    double sum = 0.0;
    for (std::uint32_t i = k; i <= trials; ++i) {
        const double log_term = std::lgamma(trials + 1.0) - std::lgamma(i + 1.0) - std::lgamma(trials - i + 1.0) +
                                i * std::log(p) + (trials - i) * std::log1p(-p);
        sum += std::exp(log_term);
    }
    return std::min(sum, 1.0);
}

DeliveryProbability analytic_delivery_prob(double x, std::uint32_t n, std::uint32_t f, std::uint32_t b) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("delivery probability x must lie in [0, 1]");
    if (n < 3 * f + 1) throw std::invalid_argument("n must be at least 3f+1");
    if (b > f) throw std::invalid_argument("b must not exceed f");
    const std::uint32_t honest = n - b;
    DeliveryProbability out;
    out.y = binomial_tail(honest, x, (n + f) / 2 + 1);
    out.z = binomial_tail(honest, out.y, 2 * f + 1);
    return out;
}

}  // namespace dagfair::adv
