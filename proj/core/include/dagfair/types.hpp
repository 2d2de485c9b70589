#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <string_view>

namespace dagfair {

/// Simulation time in ticks.
using Tick = std::uint64_t;
using NodeId = std::uint32_t;
using ClientId = std::uint32_t;
using Digest = std::uint64_t;

inline constexpr std::uint32_t kNoColumn = std::numeric_limits<std::uint32_t>::max();

/// Position of a vertex in the DAG: author row and column.
struct VertexId {
    NodeId row = 0;
    std::uint32_t column = 0;

    friend constexpr auto operator<=>(const VertexId&, const VertexId&) = default;
};

/// A transaction identifier. Game transactions carry (client, puzzle);
/// third-party transactions carry a global sequence number.
class TxId {
public:
    constexpr TxId() = default;

    static constexpr TxId game(ClientId client, std::uint32_t puzzle) {
        return TxId{(static_cast<std::uint64_t>(client) << 32) | puzzle};
    }
    static constexpr TxId third_party(std::uint64_t sequence) {
        return TxId{kThirdPartyBit | sequence};
    }
    static constexpr TxId from_raw(std::uint64_t raw) { return TxId{raw}; }

    constexpr bool is_game() const { return (value_ & kThirdPartyBit) == 0; }
    constexpr ClientId client() const { return static_cast<ClientId>((value_ >> 32) & 0x7fffffffu); }
    constexpr std::uint32_t puzzle() const { return static_cast<std::uint32_t>(value_ & 0xffffffffu); }
    constexpr std::uint64_t sequence() const { return value_ & ~kThirdPartyBit; }
    constexpr std::uint64_t raw() const { return value_; }

    /// "c<client>:<puzzle>" or "t:<seq>".
    std::string to_string() const;
    /// Inverse of to_string; throws std::invalid_argument on malformed input.
    static TxId parse(std::string_view text);

    friend constexpr auto operator<=>(const TxId&, const TxId&) = default;

private:
    static constexpr std::uint64_t kThirdPartyBit = std::uint64_t{1} << 63;
    constexpr explicit TxId(std::uint64_t v) : value_(v) {}
    std::uint64_t value_ = 0;
};

/// Bitmask of node ids; the simulator supports up to 64 nodes.
class NodeSet {
public:
    static constexpr std::uint32_t kCapacity = 64;

    constexpr void insert(NodeId id) { bits_ |= bit(id); }
    constexpr bool contains(NodeId id) const { return (bits_ & bit(id)) != 0; }
    constexpr std::uint32_t size() const { return static_cast<std::uint32_t>(__builtin_popcountll(bits_)); }
    constexpr bool empty() const { return bits_ == 0; }

    friend constexpr bool operator==(const NodeSet&, const NodeSet&) = default;

private:
    static constexpr std::uint64_t bit(NodeId id) { return std::uint64_t{1} << id; }
    std::uint64_t bits_ = 0;
};

}  // namespace dagfair

template <>
struct std::hash<dagfair::TxId> {
    std::size_t operator()(const dagfair::TxId& tx) const noexcept {
        return std::hash<std::uint64_t>{}(tx.raw());
    }
};

template <>
struct std::hash<dagfair::VertexId> {
    std::size_t operator()(const dagfair::VertexId& id) const noexcept {
        return std::hash<std::uint64_t>{}((static_cast<std::uint64_t>(id.row) << 32) | id.column);
    }
};
