#include "dagfair/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace dagfair::metrics {

std::string_view tag(Alpha a) {
    switch (a) {
        case Alpha::send: return "snd";
        case Alpha::receive: return "rec";
        case Alpha::initiate: return "ini";
        case Alpha::deliver: return "dlv";
    }
    return "?";
}

std::string_view tag(Beta b) { return b == Beta::finalize ? "fin" : "wav"; }

std::optional<ClientId> decide_winner(const std::vector<Lifecycle>& by_client_for_k) {
    std::optional<ClientId> winner;
    std::uint64_t best = 0;
    for (ClientId c = 0; c < by_client_for_k.size(); ++c) {
        const auto& pos = by_client_for_k[c].position;
        if (pos && (!winner || *pos < best)) {
            winner = c;
            best = *pos;
        }
    }
    return winner;
}

std::vector<std::vector<Lifecycle>> reconstruct(const std::vector<log::EventRecord>& records,
                                                const AuditParams& params) {
    Lifecycle blank;
    blank.received.assign(params.n, Lifecycle::kNever);
    blank.initiated.assign(params.n, Lifecycle::kNever);
    blank.delivered.assign(params.n, Lifecycle::kNever);
    std::vector<std::vector<Lifecycle>> out(params.puzzles, std::vector<Lifecycle>(params.clients, blank));

    std::optional<std::uint32_t> current_wave;
    for (const auto& r : records) {
        const bool at_reference = r.node && *r.node == params.reference;
        if (r.kind == log::Kind::wave_formed) {
            if (at_reference) current_wave = static_cast<std::uint32_t>(r.aux.value_or(0));
            continue;
        }
        const TxId tx = TxId::parse(r.tx);
        if (!tx.is_game() || tx.puzzle() < 1 || tx.puzzle() > params.puzzles || tx.client() >= params.clients) {
            continue;
        }
        Lifecycle& life = out[tx.puzzle() - 1][tx.client()];
        auto note = [&](std::vector<Tick>& slots) {
            if (!r.node || *r.node >= params.n) throw std::runtime_error("event without a valid node: " + r.tx);
            slots[*r.node] = std::min(slots[*r.node], r.tick);
        };
        switch (r.kind) {
            case log::Kind::send: life.sent = std::min(life.sent, r.tick); break;
            case log::Kind::recv: note(life.received); break;
            case log::Kind::brb_init: note(life.initiated); break;
            case log::Kind::brb_deliver: note(life.delivered); break;
            case log::Kind::finalize:
                if (at_reference && !life.position) {
                    life.position = r.aux.value_or(0);
                    life.wave = current_wave;
                }
                break;
            case log::Kind::wave_formed: break;
        }
    }
    return out;
}

namespace {

bool precedes(const Lifecycle& x, const Lifecycle& y, Alpha a, std::uint32_t n) {
    const std::vector<Tick>* xs = nullptr;
    const std::vector<Tick>* ys = nullptr;
    switch (a) {
        case Alpha::send: return x.sent < y.sent;
        case Alpha::receive: xs = &x.received; ys = &y.received; break;
        case Alpha::initiate: xs = &x.initiated; ys = &y.initiated; break;
        case Alpha::deliver: xs = &x.delivered; ys = &y.delivered; break;
    }
    std::uint32_t z = 0;
    for (std::uint32_t i = 0; i < n; ++i) z += (*xs)[i] < (*ys)[i] ? 1 : 0;
    return 2 * z > n;
}

bool violates(const Lifecycle& x, const Lifecycle& y, Beta b) {
    if (b == Beta::finalize) return *x.position > *y.position;
    return x.wave.value_or(0) > y.wave.value_or(0);
}

}  // namespace

std::uint64_t count_violations(const std::vector<std::vector<Lifecycle>>& lifecycles, Alpha a, Beta b,
                               std::uint32_t n) {
    std::uint64_t count = 0;
    for (const auto& puzzle : lifecycles) {
        for (std::size_t i = 0; i < puzzle.size(); ++i) {
            if (!puzzle[i].position) continue;
            for (std::size_t j = 0; j < puzzle.size(); ++j) {
                if (i == j || !puzzle[j].position) continue;
                if (precedes(puzzle[i], puzzle[j], a, n) && violates(puzzle[i], puzzle[j], b)) ++count;
            }
        }
    }
    return count;
}

Audit audit(const std::vector<log::EventRecord>& records, const AuditParams& params) {
    Audit out;
    for (const auto& r : records) {
        if (r.kind == log::Kind::wave_formed && r.node && *r.node == params.reference) ++out.waves;
    }
    const auto lifecycles = reconstruct(records, params);
    out.wins.assign(params.clients, 0);
    for (const auto& puzzle : lifecycles) {
        if (const auto w = decide_winner(puzzle)) {
            ++out.wins[*w];
            ++out.decided;
        }
        std::uint64_t finalized = 0;
        for (const auto& life : puzzle) finalized += life.position ? 1 : 0;
        out.pairs += finalized * (finalized - (finalized > 0 ? 1 : 0));
    }
    out.scores.assign(params.clients, 0.0);
    if (out.decided > 0) {
        for (ClientId c = 0; c < params.clients; ++c) {
            out.scores[c] = static_cast<double>(out.wins[c]) * params.clients / out.decided;
        }
    }
    for (const Alpha a : kAlphas) {
        for (const Beta b : kBetas) out.violations[of_index(a, b)] = count_violations(lifecycles, a, b, params.n);
    }
    return out;
}

std::array<double, 3> quartiles(std::vector<double> values) {
    if (values.empty()) return {0.0, 0.0, 0.0};
    std::sort(values.begin(), values.end());
    auto at = [&](double q) {
        const double pos = q * static_cast<double>(values.size() - 1);
        const auto lo = static_cast<std::size_t>(std::floor(pos));
        const auto hi = std::min(lo + 1, values.size() - 1);
        return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
    };
    return {at(0.25), at(0.5), at(0.75)};
}

std::uint64_t count_duplications(const std::vector<std::vector<TxId>>& vertex_transactions) {
    std::unordered_map<TxId, std::uint32_t> seen;
    std::uint64_t dup = 0;
    for (const auto& txs : vertex_transactions) {
        for (const TxId tx : txs) {
            if (seen[tx]++ > 0) ++dup;
        }
    }
    return dup;
}

const std::vector<std::string>& csv_columns() {
    static const std::vector<std::string> columns = [] {
        std::vector<std::string> c{"schema_version"};
        for (const auto name : kConfigColumns) c.emplace_back(name);
        for (const char* name : {"score_target", "scores", "solved_puzzles"}) c.emplace_back(name);
        for (const Alpha a : kAlphas) {
            for (const Beta b : kBetas) c.push_back("of_" + std::string(tag(a)) + "_" + std::string(tag(b)));
        }
        for (const char* name :
             {"pairs", "duplications", "waves", "wave_tx_q1", "wave_tx_median", "wave_tx_q3", "vertices", "brb_init",
              "brb_echo", "brb_ready", "brb_suppressed", "final_tick", "events", "undrained", "partial", "consistent",
              "structural_violations", "brb_violations"}) {
            c.emplace_back(name);
        }
        return c;
    }();
    return columns;
}

std::string csv_header() {
    std::string out;
    for (const auto& c : csv_columns()) {
        if (!out.empty()) out += ',';
        out += c;
    }
    return out;
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

std::string csv_row(const std::vector<std::string>& config_fields, ClientId target, const Audit& audit,
                    const RunStats& stats) {
    if (config_fields.size() != kConfigColumns.size()) throw std::invalid_argument("config echo has wrong width");
    std::vector<std::string> f{std::to_string(kCsvSchemaVersion)};
    f.insert(f.end(), config_fields.begin(), config_fields.end());
    f.push_back(target < audit.scores.size() ? format_double(audit.scores[target]) : "0");
    std::string scores;
    for (std::size_t i = 0; i < audit.scores.size(); ++i) {
        if (i > 0) scores += ';';
        scores += format_double(audit.scores[i]);
    }
    f.push_back(scores);
    f.push_back(std::to_string(audit.decided));
    for (const auto v : audit.violations) f.push_back(std::to_string(v));
    f.push_back(std::to_string(audit.pairs));
    f.push_back(std::to_string(stats.duplications));
    f.push_back(std::to_string(audit.waves));
    std::vector<double> counts(stats.wave_tx_counts.begin(), stats.wave_tx_counts.end());
    for (const double q : quartiles(counts)) f.push_back(format_double(q));
    for (const std::uint64_t v : {stats.vertices, stats.brb_init, stats.brb_echo, stats.brb_ready,
                                  stats.brb_suppressed, static_cast<std::uint64_t>(stats.final_tick), stats.events,
                                  stats.undrained}) {
        f.push_back(std::to_string(v));
    }
    f.push_back(stats.partial ? "1" : "0");
    f.push_back(stats.consistent ? "1" : "0");
    f.push_back(std::to_string(stats.structural_violations));
    f.push_back(std::to_string(stats.brb_violations));

    std::string out;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (i > 0) out += ',';
        out += f[i];
    }
    return out;
}

}  // namespace dagfair::metrics
