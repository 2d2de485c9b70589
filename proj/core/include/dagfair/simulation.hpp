#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dagfair/config.hpp"
#include "dagfair/dag_store.hpp"
#include "dagfair/dagrider.hpp"
#include "dagfair/event_log.hpp"
#include "dagfair/metrics.hpp"

namespace dagfair {

/// Final state of one node.
struct NodeOutcome {
    bool infected = false;
    dag::DagStore store;
    dag::Ledger ledger;
    /// Committed leaders in wave order, including ones above the cap.
    std::vector<VertexId> leaders;
    std::uint64_t deliveries = 0;
};

struct RunResult {
    SimConfig config;
    std::vector<log::EventRecord> log;
    std::vector<NodeOutcome> nodes;
    metrics::RunStats stats;
    metrics::Audit audit;
    /// Index of the node whose ledger defines positions and waves.
    NodeId reference = 0;
    /// Human-readable descriptions of failed invariant checks.
    std::vector<std::string> violations;

    metrics::AuditParams audit_params() const {
        return {config.n, config.clients, config.puzzles, reference};
    }
    std::string csv_row() const;
};

/// Runs one experiment to completion: puzzles are revealed until every
/// honest node has decided all of them, the commit cap is fixed, nodes keep
/// proposing until every honest node reaches it, and the queue drains.
/// Throws ConfigError for an invalid config.
RunResult run(SimConfig config);

/// Edge caps, BRB integrity/validity/agreement and ledger consistency.
/// Returns descriptions of every failed check.
std::vector<std::string> check_invariants(const RunResult& result);

}  // namespace dagfair
