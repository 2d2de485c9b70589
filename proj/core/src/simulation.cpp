#include "dagfair/simulation.hpp"

#include <algorithm>
#include <optional>
#include <unordered_set>
#include <variant>

#include "dagfair/adversary.hpp"
#include "dagfair/brb.hpp"
#include "dagfair/ordering.hpp"
#include "dagfair/scheduler.hpp"
#include "dagfair/workload.hpp"

namespace dagfair {

namespace {

struct Reveal {
    std::uint32_t puzzle;
};
struct ClientSend {
    workload::Submission submission;
};
struct TxArrive {
    NodeId node;
    TxId tx;
};
struct ThirdParty {};
struct BrbArrive {
    NodeId to;
    brb::Message message;
};
struct NodeStep {
    NodeId node;
};

using Payload = std::variant<Reveal, ClientSend, TxArrive, ThirdParty, BrbArrive, NodeStep>;

struct Node {
    Node(NodeId id, const SimConfig& cfg)
        : store(cfg.n, cfg.f),
          endpoint(id, cfg.n, cfg.f),
          committer(cfg.seed),
          rng(make_rng(cfg.seed, Stream::node, id)),
          delivered(cfg.n) {}

    dag::DagStore store;
    brb::Endpoint endpoint;
    dag::WaveCommitter committer;
    dag::Ledger ledger;
    Rng rng;
    bool infected = false;
    bool step_pending = false;
    std::unordered_set<TxId> initiated;
    std::unordered_set<TxId> delivered_txs;
    // delivered[row][column]
    std::vector<std::vector<bool>> delivered;
    std::vector<bool> decided;
    std::uint32_t decided_count = 0;
};

class Simulation {
public:
    explicit Simulation(const SimConfig& cfg)
        : cfg_(cfg),
          profile_(cfg.delay_profile()),
          adversary_(cfg.adversary()),
          taint_(cfg.target_client),
          third_party_(cfg.third_party_rate, cfg.n, make_rng(cfg.seed, Stream::third_party, 0)) {
        for (NodeId i = 0; i < cfg.n; ++i) {
            nodes_.emplace_back(i, cfg);
            nodes_.back().infected = adversary_.is_infected(i, cfg.n);
            nodes_.back().decided.assign(cfg.puzzles + 1, false);
            if (!nodes_.back().infected) ++honest_count_;
        }
        for (ClientId c = 0; c < cfg.clients; ++c) client_rngs_.push_back(make_rng(cfg.seed, Stream::client, c));
        for (NodeId row = 0; row < cfg.n; ++row) taint_.observe(*make_genesis(row));
    }

    RunResult run() {
        sched_.schedule_at(workload::reveal_tick(1, cfg_.puzzle_period), Reveal{1});
        if (third_party_.active()) sched_.schedule_at(third_party_.next_tick(), ThirdParty{});

        const Tick ceiling = cfg_.effective_tick_ceiling();
        Event<Payload> ev;
        while (sched_.pop(ev, ceiling)) {
            std::visit([this](auto& p) { handle(p); }, ev.payload);
        }
        return finish();
    }

private:
    // --- event handlers ---------------------------------------------------

    void handle(Reveal& r) {
        for (ClientId c = 0; c < cfg_.clients; ++c) {
            auto s = workload::solve_puzzle(c, r.puzzle, cfg_.n, cfg_.fanout, profile_, client_rngs_[c]);
            const Tick at = s.sent;
            sched_.schedule_at(at, ClientSend{std::move(s)});
        }
        if (r.puzzle < cfg_.puzzles) {
            sched_.schedule_at(workload::reveal_tick(r.puzzle + 1, cfg_.puzzle_period), Reveal{r.puzzle + 1});
        }
    }

    void handle(ClientSend& s) {
        record(log::Kind::send, std::nullopt, s.submission.tx);
        for (const auto& [node, at] : s.submission.arrivals) sched_.schedule_at(at, TxArrive{node, s.submission.tx});
        if (++sends_done_ == static_cast<std::uint64_t>(cfg_.puzzles) * cfg_.clients) closing_ = true;
        if (closing_) wake_all();
    }

    void handle(TxArrive& a) { receive(a.node, a.tx); }

    void handle(ThirdParty&) {
        if (injection_stopped_) return;
        const auto [tx, node] = third_party_.pop();
        receive(node, tx);
        sched_.schedule_at(third_party_.next_tick(), ThirdParty{});
    }

    void handle(BrbArrive& a) {
        Node& node = nodes_[a.to];
        const brb::Message& msg = a.message;
        brb::Outcome out = node.endpoint.on_message(msg);
        for (const brb::Message& m : out.outbound) {
            if (broadcast(a.to, m) && m.kind == brb::Kind::echo && msg.payload) mark_initiated(a.to, *msg.payload);
        }
        if (out.delivered) on_delivered(a.to, out.delivered);
    }

    void handle(NodeStep& s) {
        Node& node = nodes_[s.node];
        node.step_pending = false;
        commit_waves(s.node);
        if (!halted_) propose(s.node);
        update_phase();
    }

    // --- node behaviour ---------------------------------------------------

    void receive(NodeId id, TxId tx) {
        record(log::Kind::recv, id, tx);
        nodes_[id].store.push_transaction(tx);
        request_step(id);
    }

    void request_step(NodeId id) {
        Node& node = nodes_[id];
        if (node.step_pending) return;
        node.step_pending = true;
        sched_.schedule_at(sched_.now(), NodeStep{id});
    }

    void wake_all() {
        for (NodeId i = 0; i < cfg_.n; ++i) request_step(i);
    }

    bool broadcast(NodeId from, const brb::Message& m) {
        if (nodes_[from].infected && adv::byz_brb_filter(m, taint_, adversary_.taint_scope) == adv::FilterVerdict::suppress) {
            stats_.brb_suppressed += cfg_.n;
            return false;
        }
        switch (m.kind) {
            case brb::Kind::init: stats_.brb_init += cfg_.n; break;
            case brb::Kind::echo: stats_.brb_echo += cfg_.n; break;
            case brb::Kind::ready: stats_.brb_ready += cfg_.n; break;
        }
        Rng& rng = nodes_[from].rng;
        for (NodeId to = 0; to < cfg_.n; ++to) {
            sched_.schedule_after(sample_delay(profile_, DelayKind::node_to_node, rng), BrbArrive{to, m});
        }
        return true;
    }

    void mark_initiated(NodeId id, const Vertex& v) {
        Node& node = nodes_[id];
        for (const TxId tx : v.transactions) {
            if (node.initiated.insert(tx).second) record(log::Kind::brb_init, id, tx);
        }
    }

    void on_delivered(NodeId id, const VertexPtr& v) {
        Node& node = nodes_[id];
        if (node.delivered[v->row()].size() <= v->column()) node.delivered[v->row()].resize(v->column() + 1, false);
        if (node.delivered[v->row()][v->column()]) ++stats_.brb_violations;
        node.delivered[v->row()][v->column()] = true;
        for (const TxId tx : v->transactions) {
            if (node.delivered_txs.insert(tx).second) record(log::Kind::brb_deliver, id, tx);
        }
        if (!node.store.deliver(v).empty()) request_step(id);
    }

    void commit_waves(NodeId id) {
        Node& node = nodes_[id];
        for (const dag::Wave& wave : node.committer.advance(node.store, cap_)) {
            const auto ordered = order::order_wave(cfg_.order, wave, cfg_.n);
            log_.push_back({sched_.now(), log::Kind::wave_formed, id, log::digest_hex(wave.leader->digest), wave.index});
            const std::size_t base = node.ledger.size();
            const auto appended = node.ledger.finalize_wave(ordered, wave.index);
            if (id == reference_) stats_.wave_tx_counts.push_back(static_cast<std::uint32_t>(appended.size()));
            for (std::size_t i = 0; i < appended.size(); ++i) {
                const TxId tx = appended[i];
                if (tx.is_game() || cfg_.log_third_party) {
                    log_.push_back({sched_.now(), log::Kind::finalize, id, tx.to_string(), base + i});
                }
                if (!node.infected && tx.is_game() && tx.puzzle() >= 1 && tx.puzzle() <= cfg_.puzzles &&
                    !node.decided[tx.puzzle()]) {
                    node.decided[tx.puzzle()] = true;
                    if (++node.decided_count == cfg_.puzzles) ++honest_done_;
                }
            }
        }
    }

    void propose(NodeId id) {
        Node& node = nodes_[id];
        const dag::ProposalOptions options{closing_ || cap_.has_value()};
        auto v = node.infected ? adv::byz_propose(node.store, id, adversary_, node.rng, options)
                               : dag::try_propose(node.store, id, node.rng, options);
        if (!v) return;
        const VertexPtr& vertex = *v;
        taint_.observe(*vertex);
        ++stats_.vertices;
        const brb::Message init = node.endpoint.rbcast(vertex);
        mark_initiated(id, *vertex);
        broadcast(id, init);
    }

    void update_phase() {
        if (!cap_ && honest_done_ == honest_count_) {
            // Every honest node decided every puzzle: stop injecting and fix
            // the highest wave anyone has committed as the finalization cap.
            injection_stopped_ = true;
            std::uint32_t cap = 0;
            for (const Node& node : nodes_) {
                if (!node.infected && node.committer.last_committed()) {
                    cap = std::max(cap, *node.committer.last_committed());
                }
            }
            cap_ = cap;
            wake_all();
        }
        if (cap_ && !halted_) {
            const bool all_reached = std::all_of(nodes_.begin(), nodes_.end(), [&](const Node& node) {
                return node.infected || (node.committer.last_committed() && *node.committer.last_committed() >= *cap_);
            });
            if (all_reached) halted_ = true;
        }
    }

    void record(log::Kind kind, std::optional<NodeId> node, TxId tx) {
        if (!tx.is_game() && !cfg_.log_third_party) return;
        log_.push_back({sched_.now(), kind, node, tx.to_string(), std::nullopt});
    }

    RunResult finish() {
        RunResult result;
        result.config = cfg_;
        result.reference = reference_;
        stats_.final_tick = sched_.now();
        stats_.events = sched_.processed();
        stats_.undrained = sched_.pending();
        stats_.partial = !halted_ || !sched_.empty();

        std::vector<std::vector<TxId>> txs;
        for (NodeId row = 0; row < cfg_.n; ++row) {
            for (std::uint32_t c = 1; c <= nodes_[reference_].store.top_column(); ++c) {
                if (const Vertex* v = nodes_[reference_].store.find({row, c})) txs.push_back(v->transactions);
            }
        }
        stats_.duplications = metrics::count_duplications(txs);

        for (Node& node : nodes_) {
            result.nodes.push_back(NodeOutcome{node.infected, std::move(node.store), std::move(node.ledger),
                                               node.committer.leaders(), node.endpoint.deliveries()});
        }
        result.log = std::move(log_);
        result.stats = stats_;
        result.violations = check_invariants(result);
        result.stats.consistent = std::none_of(result.violations.begin(), result.violations.end(),
                                               [](const std::string& s) { return s.rfind("consistency", 0) == 0; });
        result.audit = metrics::audit(result.log, result.audit_params());
        return result;
    }

    const SimConfig& cfg_;
    DelayProfile profile_;
    adv::AdversaryConfig adversary_;
    adv::TaintIndex taint_;
    workload::ThirdPartySource third_party_;
    Scheduler<Payload> sched_;
    std::vector<Node> nodes_;
    std::vector<Rng> client_rngs_;
    std::vector<log::EventRecord> log_;
    metrics::RunStats stats_;
    NodeId reference_ = 0;
    std::uint32_t honest_count_ = 0;
    std::uint32_t honest_done_ = 0;
    std::uint64_t sends_done_ = 0;
    bool closing_ = false;
    bool injection_stopped_ = false;
    std::optional<std::uint32_t> cap_;
    bool halted_ = false;
};

}  // namespace

std::string RunResult::csv_row() const {
    return metrics::csv_row(config.csv_fields(), config.target_client, audit, stats);
}

RunResult run(SimConfig config) {
    validate(config);
    Simulation sim(config);
    return sim.run();
}

std::vector<std::string> check_invariants(const RunResult& result) {
    std::vector<std::string> out;
    const auto& cfg = result.config;

    std::uint64_t structural = 0;
    for (NodeId i = 0; i < result.nodes.size(); ++i) {
        const auto& store = result.nodes[i].store;
        for (std::uint32_t c = 1; c <= store.top_column(); ++c) {
            for (const Vertex* v : store.column(c)) {
                if (!satisfies_edge_caps(*v, cfg.n, cfg.f)) ++structural;
            }
        }
    }
    if (structural > 0) out.push_back("structural: " + std::to_string(structural) + " vertices break the edge caps");
    if (result.stats.brb_violations > 0) out.push_back("brb integrity: duplicate deliveries");

    const bool drained = !result.stats.partial;
    std::vector<NodeId> honest;
    for (NodeId i = 0; i < result.nodes.size(); ++i) {
        if (!result.nodes[i].infected) honest.push_back(i);
    }

    if (drained && !honest.empty()) {
        // Agreement and validity: after the drain every honest node holds the
        // same vertex set, and that set contains every honest vertex.
        const auto& ref = result.nodes[honest.front()].store;
        for (const NodeId i : honest) {
            const auto& store = result.nodes[i].store;
            if (store.vertex_count() + store.buffered_count() != ref.vertex_count() + ref.buffered_count()) {
                out.push_back("brb agreement: node " + std::to_string(i) + " delivered a different vertex count");
                break;
            }
        }
        for (const NodeId author : honest) {
            const auto& own = result.nodes[author].store;
            for (const NodeId i : honest) {
                const auto& store = result.nodes[i].store;
                for (std::uint32_t c = 1; c < own.next_column(); ++c) {
                    const VertexId id{author, c};
                    if (!store.contains(id) && !store.is_buffered(id)) {
                        out.push_back("brb validity: node " + std::to_string(i) + " never delivered (" +
                                      std::to_string(author) + "," + std::to_string(c) + ")");
                        goto validity_done;
                    }
                }
            }
        }
    validity_done:;
    }

    // Consistency: honest ledgers are prefixes of the longest one, and equal
    // once drained.
    const dag::Ledger* longest = nullptr;
    for (const NodeId i : honest) {
        const auto& l = result.nodes[i].ledger;
        if (longest == nullptr || l.size() > longest->size()) longest = &l;
    }
    for (const NodeId i : honest) {
        const auto& l = result.nodes[i].ledger;
        bool ok = !drained || l.size() == longest->size();
        for (std::size_t k = 0; ok && k < l.size(); ++k) {
            ok = l.entries()[k].tx == longest->entries()[k].tx && l.entries()[k].wave == longest->entries()[k].wave;
        }
        if (!ok) {
            out.push_back("consistency: node " + std::to_string(i) + " ledger diverges");
            break;
        }
    }
    return out;
}

}  // namespace dagfair
