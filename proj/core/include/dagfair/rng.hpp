#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace dagfair {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer; used for seed derivation and digest mixing.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Stream tags for per-actor substreams.
enum class Stream : std::uint64_t {
    node = 1,
    client = 2,
    third_party = 3,
    coin = 4,
    puzzle = 5,
    probe = 6,
};

/// Derives an independent substream seed from the master seed. The seed
/// depends only on (master, stream, index), so adding actors never shifts
/// the streams of existing ones.
constexpr std::uint64_t derive_seed(std::uint64_t master, Stream stream, std::uint64_t index) {
    return mix64(mix64(master ^ mix64(static_cast<std::uint64_t>(stream))) + index);
}

inline Rng make_rng(std::uint64_t master, Stream stream, std::uint64_t index) {
    return Rng{derive_seed(master, stream, index)};
}

/// Uniform double in [0, 1) built from the top 53 bits.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, bound) by modulo with rejection of the biased tail.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t max = Rng::max();
    const std::uint64_t limit = max - (max % bound + 1) % bound;
    for (;;) {
        const std::uint64_t x = rng();
        if (x <= limit) return x % bound;
    }
}

/// Fisher-Yates shuffle with uniform_below; the result is identical on every
/// standard library, unlike std::shuffle.
template <class It>
void portable_shuffle(It first, It last, Rng& rng) {
    const auto count = static_cast<std::uint64_t>(last - first);
    for (std::uint64_t i = count; i > 1; --i) {
        const auto j = uniform_below(rng, i);
        std::swap(first[i - 1], first[j]);
    }
}

}  // namespace dagfair
