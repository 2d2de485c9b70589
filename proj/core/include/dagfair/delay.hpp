#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "dagfair/rng.hpp"
#include "dagfair/types.hpp"

namespace dagfair {

/// A delay distribution over continuous time; samples are rounded up to
/// whole ticks with a floor of one tick.
struct Distribution {
    enum class Family { constant, exponential, hypoexponential, poisson };

    Family family = Family::constant;
    /// Stage means: one entry for constant/exponential/poisson, several for
    /// hypoexponential (each stage is exponential with that mean).
    std::vector<double> means{1.0};

    static Distribution constant(double value) { return {Family::constant, {value}}; }
    static Distribution exponential(double mean) { return {Family::exponential, {mean}}; }
    static Distribution hypoexponential(std::vector<double> stage_means) {
        return {Family::hypoexponential, std::move(stage_means)};
    }
    static Distribution poisson(double mean) { return {Family::poisson, {mean}}; }

    double mean() const;
    /// Smallest x with P(X <= x) >= p.
    double quantile(double p) const;
    /// One raw (unrounded, untruncated) draw.
    double draw(Rng& rng) const;
};

enum class ProfileKind { perfect, quick, slow };
enum class DelayKind { node_to_node, client_to_node, solve_time };

std::string_view to_string(ProfileKind kind);
std::string_view to_string(DelayKind kind);
/// Throws ConfigError on an unknown name.
ProfileKind parse_profile(std::string_view name);
DelayKind parse_delay_kind(std::string_view name);

/// The network/application delay model of one experiment.
struct DelayProfile {
    ProfileKind kind = ProfileKind::quick;
    Distribution node_to_node;
    Distribution client_to_node;
    Distribution solve_time;
    Tick puzzle_period = 200;
    /// Per-distribution caps, indexed by DelayKind.
    Tick node_to_node_bound = 1;
    Tick client_to_node_bound = 1;
    Tick solve_time_bound = 1;

    static constexpr double kBoundQuantile = 0.9999;

    /// Builds one of the stock profiles. Bounds default to the 99.99th
    /// percentile of each distribution, rounded up.
    static DelayProfile make(ProfileKind kind, Tick puzzle_period = 200, double solve_mean = 100.0,
                             double client_delay_mean = 20.0);

    Tick bound(DelayKind kind) const;
    /// Largest bound across all distributions (Delta).
    Tick delta_bound() const;
    const Distribution& distribution(DelayKind kind) const;
};

/// Samples a delay in [1, bound(kind)]; draws above the bound are resampled.
Tick sample_delay(const DelayProfile& profile, DelayKind kind, Rng& rng);

}  // namespace dagfair
