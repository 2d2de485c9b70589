#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <variant>
#include <vector>

#include "dagfair/dag_store.hpp"
#include "dagfair/rng.hpp"
#include "dagfair/types.hpp"
#include "dagfair/vertex.hpp"

namespace dagfair::dag {

/// Columns scanned below the proposal column when looking for orphans.
inline constexpr std::uint32_t kOrphanWindow = 16;

/// Options shared by honest and Byzantine proposal paths.
struct ProposalOptions {
    /// Propose even when no transaction is pending (used while draining).
    bool allow_empty = false;
};

/// Vertices below column `column - 1` that are not reachable from any of
/// `strong_targets` (strong or weak edges). Sorted by (column, row).
std::vector<const Vertex*> find_orphans(const DagStore& store, std::uint32_t column,
                                        const std::vector<VertexId>& strong_targets);

/// Picks at most `cap` weak-edge targets among `orphans`, lowest columns
/// first with random order inside a column.
std::vector<VertexId> select_weak_edges(std::vector<const Vertex*> orphans, std::uint32_t cap, Rng& rng);

/// Honest proposal: requires 2f+1 vertices at next_column-1 and a
/// non-empty mempool (unless allow_empty). Strong edges to every vertex at
/// column-1, weak edges to orphans capped at f. On success, the mempool
/// entries are marked proposed and the column cursor advances.
std::optional<VertexPtr> try_propose(DagStore& store, NodeId self, Rng& rng, const ProposalOptions& options = {});

/// Shared-coin leader election: a row in [0, n) that depends only on
/// (coin_seed, wave).
NodeId elect_leader(std::uint32_t wave, std::uint32_t n, std::uint64_t coin_seed);

inline std::uint32_t leader_column(std::uint32_t wave) { return 1 + 4 * wave; }
inline std::uint32_t decision_column(std::uint32_t wave) { return 4 + 4 * wave; }

/// True when `from` reaches `to` using strong edges only.
bool strong_path(const DagStore& store, const Vertex& from, const Vertex& to);

/// Number of vertices at `column` having a strong-only path to `target`.
std::uint32_t strong_supporters(const DagStore& store, const Vertex& target, std::uint32_t column);

/// The not-yet-ordered part of a leader's causal history.
struct Wave {
    std::uint32_t index = 0;
    const Vertex* leader = nullptr;
    /// Members sorted by (column, row); includes the leader.
    std::vector<const Vertex*> members;
};

/// Causal history (strong and weak edges) of `leader`, minus ordered
/// vertices.
std::vector<const Vertex*> causal_members(const DagStore& store, const Vertex& leader);

struct WaveSkip {};
struct WaveNotReady {};
using WaveDecision = std::variant<Wave, WaveSkip, WaveNotReady>;

/// Direct commit test for wave `w`: not ready until the decision column
/// holds 2f+1 vertices; then the wave forms if the leader vertex exists and
/// 2f+1 decision-column vertices reach it by strong paths, else skip.
WaveDecision try_form_wave(const DagStore& store, std::uint32_t w, std::uint64_t coin_seed);

/// Walks waves in order and commits leaders, including skipped leaders
/// reachable from a later committed one by strong paths.
class WaveCommitter {
public:
    explicit WaveCommitter(std::uint64_t coin_seed) : coin_seed_(coin_seed) {}

    /// Evaluates every ready wave; returns the waves to order, ascending,
    /// and marks their members as ordered in `store`. Leaders with an index
    /// above `cap` are committed but never ordered.
    std::vector<Wave> advance(DagStore& store, std::optional<std::uint32_t> cap = std::nullopt);

    std::uint32_t next_wave() const { return next_wave_; }
    /// Highest wave whose leader was committed (directly or retroactively).
    std::optional<std::uint32_t> last_committed() const { return last_committed_; }
    /// Committed leader positions, ascending by wave.
    const std::vector<VertexId>& leaders() const { return leaders_; }

private:
    std::uint64_t coin_seed_;
    std::uint32_t next_wave_ = 0;
    std::optional<std::uint32_t> last_committed_;
    std::vector<VertexId> leaders_;
};

/// A node's finalized transaction sequence.
class Ledger {
public:
    struct Entry {
        TxId tx;
        std::uint32_t wave = 0;
    };

    /// Appends the transactions of `ordered` (vertex order, then in-vertex
    /// order), skipping ones already finalized. Returns the appended ids.
    std::vector<TxId> finalize_wave(const std::vector<const Vertex*>& ordered, std::uint32_t wave);

    const std::vector<Entry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    std::optional<std::size_t> position(TxId tx) const;
    bool contains(TxId tx) const { return positions_.contains(tx); }

private:
    std::vector<Entry> entries_;
    std::unordered_map<TxId, std::size_t> positions_;
};

}  // namespace dagfair::dag
