#include "dagfair/delay.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dagfair/errors.hpp"

namespace dagfair {
namespace {

double exponential_draw(double mean, Rng& rng) {
    // 1 - u is in (0, 1], so the log is finite.
    return -mean * std::log(1.0 - uniform01(rng));
}

double poisson_draw(double mean, Rng& rng) {
    // Sequential inversion; means in this simulator are O(100).
    const double u = uniform01(rng);
    double p = std::exp(-mean);
    double cdf = p;
    std::uint64_t k = 0;
    while (u > cdf && p > 0.0) {
        ++k;
        p *= mean / static_cast<double>(k);
        cdf += p;
    }
    return static_cast<double>(k);
}

/// Survival function of a hypoexponential with distinct rates.
double hypoexponential_survival(const std::vector<double>& means, double x) {
    double survival = 0.0;
    for (std::size_t i = 0; i < means.size(); ++i) {
        const double rate_i = 1.0 / means[i];
        double coefficient = 1.0;
        for (std::size_t j = 0; j < means.size(); ++j) {
            if (j == i) continue;
            const double rate_j = 1.0 / means[j];
            coefficient *= rate_j / (rate_j - rate_i);
        }
        survival += coefficient * std::exp(-rate_i * x);
    }
    return survival;
}

}  // namespace

double Distribution::mean() const {
    switch (family) {
        case Family::constant:
        case Family::exponential:
        case Family::poisson:
            return means.front();
        case Family::hypoexponential:
            return std::accumulate(means.begin(), means.end(), 0.0);
    }
    return 0.0;
}

double Distribution::quantile(double p) const {
    switch (family) {
        case Family::constant:
            return means.front();
        case Family::exponential:
            return -means.front() * std::log(1.0 - p);
        case Family::poisson: {
            const double mean = means.front();
            double term = std::exp(-mean);
            double cdf = term;
            std::uint64_t k = 0;
            while (cdf < p) {
                ++k;
                term *= mean / static_cast<double>(k);
                cdf += term;
            }
            return static_cast<double>(k);
        }
        case Family::hypoexponential: {
            double lo = 0.0;
            double hi = mean();
            while (hypoexponential_survival(means, hi) > 1.0 - p) hi *= 2.0;
            for (int i = 0; i < 200; ++i) {
                const double mid = 0.5 * (lo + hi);
                if (hypoexponential_survival(means, mid) > 1.0 - p) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            return hi;
        }
    }
    return 0.0;
}

double Distribution::draw(Rng& rng) const {
    switch (family) {
        case Family::constant:
            return means.front();
        case Family::exponential:
            return exponential_draw(means.front(), rng);
        case Family::poisson:
            return poisson_draw(means.front(), rng);
        case Family::hypoexponential: {
            double total = 0.0;
            for (const double stage : means) total += exponential_draw(stage, rng);
            return total;
        }
    }
    return 0.0;
}

std::string_view to_string(ProfileKind kind) {
    switch (kind) {
        case ProfileKind::perfect: return "perfect";
        case ProfileKind::quick: return "quick";
        case ProfileKind::slow: return "slow";
    }
    return "?";
}

std::string_view to_string(DelayKind kind) {
    switch (kind) {
        case DelayKind::node_to_node: return "node_to_node";
        case DelayKind::client_to_node: return "client_to_node";
        case DelayKind::solve_time: return "solve_time";
    }
    return "?";
}

ProfileKind parse_profile(std::string_view name) {
    if (name == "perfect") return ProfileKind::perfect;
    if (name == "quick") return ProfileKind::quick;
    if (name == "slow") return ProfileKind::slow;
    throw ConfigError("profile", "unknown delay profile '" + std::string(name) + "' (expected perfect, quick or slow)");
}

DelayKind parse_delay_kind(std::string_view name) {
    if (name == "node_to_node") return DelayKind::node_to_node;
    if (name == "client_to_node") return DelayKind::client_to_node;
    if (name == "solve_time") return DelayKind::solve_time;
    throw ConfigError("delay_kind", "unknown delay kind '" + std::string(name) + "'");
}

namespace {
Tick bound_of(const Distribution& d) {
    const double q = d.quantile(DelayProfile::kBoundQuantile);
    return std::max<Tick>(1, static_cast<Tick>(std::ceil(q)));
}
}  // namespace

DelayProfile DelayProfile::make(ProfileKind kind, Tick puzzle_period, double solve_mean, double client_delay_mean) {
    DelayProfile profile;
    profile.kind = kind;
    profile.puzzle_period = puzzle_period;
    switch (kind) {
        case ProfileKind::perfect:
            profile.node_to_node = Distribution::constant(1.0);
            profile.client_to_node = Distribution::constant(1.0);
            profile.solve_time = Distribution::constant(1.0);
            break;
        case ProfileKind::quick:
            profile.node_to_node = Distribution::hypoexponential({10.0, 15.0, 20.0});
            profile.client_to_node = Distribution::exponential(client_delay_mean);
            profile.solve_time = Distribution::poisson(solve_mean);
            break;
        case ProfileKind::slow:
            profile.node_to_node = Distribution::hypoexponential({20.0, 30.0, 40.0});
            profile.client_to_node = Distribution::exponential(client_delay_mean);
            profile.solve_time = Distribution::poisson(solve_mean);
            break;
    }
    profile.node_to_node_bound = bound_of(profile.node_to_node);
    profile.client_to_node_bound = bound_of(profile.client_to_node);
    profile.solve_time_bound = bound_of(profile.solve_time);
    return profile;
}

Tick DelayProfile::bound(DelayKind kind) const {
    switch (kind) {
        case DelayKind::node_to_node: return node_to_node_bound;
        case DelayKind::client_to_node: return client_to_node_bound;
        case DelayKind::solve_time: return solve_time_bound;
    }
    throw ConfigError("delay_kind", "unknown delay kind");
}

Tick DelayProfile::delta_bound() const {
    return std::max({node_to_node_bound, client_to_node_bound, solve_time_bound});
}

const Distribution& DelayProfile::distribution(DelayKind kind) const {
    switch (kind) {
        case DelayKind::node_to_node: return node_to_node;
        case DelayKind::client_to_node: return client_to_node;
        case DelayKind::solve_time: return solve_time;
    }
    throw ConfigError("delay_kind", "unknown delay kind");
}

Tick sample_delay(const DelayProfile& profile, DelayKind kind, Rng& rng) {
    const Distribution& dist = profile.distribution(kind);
    const Tick cap = profile.bound(kind);
    for (;;) {
        const double raw = dist.draw(rng);
        const Tick ticks = std::max<Tick>(1, static_cast<Tick>(std::ceil(raw)));
        if (ticks <= cap) return ticks;
    }
}

}  // namespace dagfair
