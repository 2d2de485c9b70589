#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "dagfair/delay.hpp"
#include "dagfair/rng.hpp"
#include "dagfair/types.hpp"

namespace dagfair::workload {

inline Tick reveal_tick(std::uint32_t puzzle, Tick period) { return static_cast<Tick>(puzzle) * period; }

/// Resolves a fanout given as a number or as one of "1", "f+1", "2f+1",
/// "3f+1". Throws ConfigError when the result is outside [1, n].
std::uint32_t parse_fanout(std::string_view text, std::uint32_t f, std::uint32_t n);

/// `fanout` distinct nodes drawn uniformly from [0, n), in draw order.
std::vector<NodeId> choose_recipients(std::uint32_t n, std::uint32_t fanout, Rng& rng);

/// One solved puzzle as seen by a client: when it was solved and where and
/// when each copy of the transaction lands.
struct Submission {
    TxId tx;
    Tick sent = 0;
    std::vector<std::pair<NodeId, Tick>> arrivals;
};

/// Draws the solve time, recipients and per-recipient delays of client
/// `client` for `puzzle`, in that order, from the client's own stream.
Submission solve_puzzle(ClientId client, std::uint32_t puzzle, std::uint32_t n, std::uint32_t fanout,
                        const DelayProfile& profile, Rng& rng);

/// Background traffic: a Poisson process of system-wide rate `rate`
/// (transactions per tick), each transaction landing on one uniform node.
class ThirdPartySource {
public:
    ThirdPartySource(double rate, std::uint32_t n, Rng rng);

    bool active() const { return rate_ > 0.0; }
    /// Tick of the next arrival (at least `after`).
    Tick next_tick() const { return next_tick_; }
    /// Consumes the pending arrival and returns (tx, node); draws the next.
    std::pair<TxId, NodeId> pop();
    std::uint64_t generated() const { return sequence_; }

private:
    void draw_next();

    double rate_;
    std::uint32_t n_;
    Rng rng_;
    double clock_ = 0.0;
    Tick next_tick_ = 0;
    std::uint64_t sequence_ = 0;
};

}  // namespace dagfair::workload
