#include "dagfair/workload.hpp"

#include <charconv>
#include <cmath>
#include <numeric>
#include <string>

#include "dagfair/errors.hpp"

namespace dagfair::workload {

std::uint32_t parse_fanout(std::string_view text, std::uint32_t f, std::uint32_t n) {
    std::uint32_t value = 0;
    if (text == "f+1") {
        value = f + 1;
    } else if (text == "2f+1") {
        value = 2 * f + 1;
    } else if (text == "3f+1") {
        value = 3 * f + 1;
    } else {
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc{} || ptr != text.data() + text.size()) {
            throw ConfigError("fanout", "expected a count or one of f+1, 2f+1, 3f+1, got '" + std::string(text) + "'");
        }
    }
    if (value < 1 || value > n) {
        throw ConfigError("fanout", "fanout " + std::to_string(value) + " outside [1, " + std::to_string(n) + "]");
    }
    return value;
}

std::vector<NodeId> choose_recipients(std::uint32_t n, std::uint32_t fanout, Rng& rng) {
    std::vector<NodeId> pool(n);
    std::iota(pool.begin(), pool.end(), NodeId{0});
    // Partial Fisher-Yates: the first `fanout` slots are a uniform subset.
    for (std::uint32_t i = 0; i < fanout && i < n; ++i) {
        const auto j = i + static_cast<std::uint32_t>(uniform_below(rng, n - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(std::min(fanout, n));
    return pool;
}

Submission solve_puzzle(ClientId client, std::uint32_t puzzle, std::uint32_t n, std::uint32_t fanout,
                        const DelayProfile& profile, Rng& rng) {
    Submission s;
    s.tx = TxId::game(client, puzzle);
    s.sent = reveal_tick(puzzle, profile.puzzle_period) + sample_delay(profile, DelayKind::solve_time, rng);
    for (const NodeId node : choose_recipients(n, fanout, rng)) {
        s.arrivals.emplace_back(node, s.sent + sample_delay(profile, DelayKind::client_to_node, rng));
    }
    return s;
}

ThirdPartySource::ThirdPartySource(double rate, std::uint32_t n, Rng rng) : rate_(rate), n_(n), rng_(rng) {
    if (rate < 0.0 || !std::isfinite(rate)) throw ConfigError("third_party_rate", "rate must be finite and >= 0");
    if (active()) draw_next();
}

void ThirdPartySource::draw_next() {
    clock_ += -std::log1p(-uniform01(rng_)) / rate_;
    next_tick_ = std::max<Tick>(1, static_cast<Tick>(std::ceil(clock_)));
}

std::pair<TxId, NodeId> ThirdPartySource::pop() {
    const TxId tx = TxId::third_party(sequence_++);
    const auto node = static_cast<NodeId>(uniform_below(rng_, n_));
    draw_next();
    return {tx, node};
}

}  // namespace dagfair::workload
