#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dagfair/brb.hpp"
#include "dagfair/dag_store.hpp"
#include "dagfair/dagrider.hpp"
#include "dagfair/rng.hpp"
#include "dagfair/types.hpp"

namespace dagfair::adv {

/// Which vertices the BRB filter treats as carrying the target.
enum class TaintScope {
    /// Vertices that themselves contain a target transaction.
    direct,
    /// Vertices whose causal history contains a target transaction.
    causal,
};

std::string_view to_string(TaintScope scope);
TaintScope parse_taint_scope(std::string_view text);

struct AdversaryConfig {
    std::uint32_t byzantine = 0;
    ClientId target_client = 0;
    std::uint32_t pariah_depth = 2;
    TaintScope taint_scope = TaintScope::direct;

    /// Infected nodes are the last `byzantine` ids, so node 0 stays honest.
    bool is_infected(NodeId node, std::uint32_t n) const { return node + byzantine >= n; }
    bool is_target(TxId tx) const { return tx.is_game() && tx.client() == target_client; }
};

/// Incremental taint bookkeeping over every vertex created in a run. A
/// vertex must be observed after all of its edge targets.
class TaintIndex {
public:
    explicit TaintIndex(ClientId target) : target_(target) {}

    void observe(const Vertex& v);
    bool contains_target(VertexId id) const;
    /// True when the vertex or anything in its causal history carries a
    /// target transaction.
    bool tainted(VertexId id) const;
    bool tainted(VertexId id, TaintScope scope) const {
        return scope == TaintScope::direct ? contains_target(id) : tainted(id);
    }
    std::size_t size() const { return flags_.size(); }

private:
    struct Flags {
        bool direct = false;
        bool causal = false;
    };
    ClientId target_;
    std::unordered_map<VertexId, Flags> flags_;
};

/// Depth-d tuple: entry k counts target transactions carried by vertices at
/// column (column(v) - k) in the causal history of v, v included.
std::vector<std::uint32_t> pariah_rank(const dag::DagStore& store, const Vertex& v, ClientId target,
                                       std::uint32_t depth);

/// Infected proposal. Same readiness rule as the honest one, but target
/// transactions are never proposed, strong edges go to every candidate with
/// an all-zero rank (topped up to 2f+1 with the lowest ranks, ties by row)
/// and weak edges skip orphans with a non-zero rank.
std::optional<VertexPtr> byz_propose(dag::DagStore& store, NodeId self, const AdversaryConfig& cfg, Rng& rng,
                                     const dag::ProposalOptions& options = {});

enum class FilterVerdict { send, suppress };

/// ECHO and READY for target-carrying broadcasts are suppressed; INIT and
/// everything else passes.
FilterVerdict byz_brb_filter(const brb::Message& outbound, const TaintIndex& taint, TaintScope scope);

struct DeliveryProbability {
    double y = 0.0;
    double z = 0.0;
};

/// Probability that a node gathers an echo quorum (y) and then a delivery
/// quorum (z) when each honest message arrives in time with probability x
/// and b nodes stay silent. Throws std::domain_error for x outside [0, 1].
DeliveryProbability analytic_delivery_prob(double x, std::uint32_t n, std::uint32_t f, std::uint32_t b);

/// P(Binomial(trials, p) >= k).
double binomial_tail(std::uint32_t trials, double p, std::uint32_t k);

}  // namespace dagfair::adv
