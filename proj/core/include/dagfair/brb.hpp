#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "dagfair/types.hpp"
#include "dagfair/vertex.hpp"

namespace dagfair::brb {

enum class Kind : std::uint8_t { init, echo, ready };

const char* to_string(Kind kind);

/// One Bracha message. INIT carries the full vertex; ECHO and READY carry
/// only the digest of the broadcast they answer.
struct Message {
    Kind kind = Kind::init;
    VertexId broadcast;
    Digest digest = 0;
    NodeId sender = 0;
    VertexPtr payload;
};

/// Quorum sizes for n nodes tolerating f faults.
struct Thresholds {
    std::uint32_t echo_to_ready = 0;
    std::uint32_t ready_to_ready = 0;
    std::uint32_t ready_to_deliver = 0;

    friend bool operator==(const Thresholds&, const Thresholds&) = default;
};

/// Returns (floor((n+f)/2)+1, f+1, 2f+1). Throws std::invalid_argument when
/// n < 3f+1.
Thresholds thresholds(std::uint32_t n, std::uint32_t f);

/// Raised when two messages of the same broadcast disagree on the digest.
class EquivocationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when a node tries to start a second broadcast for one slot.
class DuplicateBroadcastError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct Outcome {
    /// Messages this node must now send to all n nodes.
    std::vector<Message> outbound;
    /// Set exactly once per instance, when the payload is delivered.
    VertexPtr delivered;
};

/// Per-broadcast state at one node.
class Instance {
public:
    Instance() = default;
    Instance(VertexId broadcast, NodeId self) : broadcast_(broadcast), self_(self) {}

    /// Feeds one message. Duplicate (kind, sender) pairs are ignored.
    Outcome handle(const Message& msg, const Thresholds& t);

    bool delivered() const { return delivered_; }
    bool sent_echo() const { return sent_echo_; }
    bool sent_ready() const { return sent_ready_; }
    std::uint32_t echo_count() const { return echo_senders_.size(); }
    std::uint32_t ready_count() const { return ready_senders_.size(); }
    const VertexPtr& payload() const { return payload_; }
    std::optional<Digest> digest() const { return digest_; }

private:
    Message make(Kind kind) const;
    void check_digest(const Message& msg);

    VertexId broadcast_;
    NodeId self_ = 0;
    std::optional<Digest> digest_;
    VertexPtr payload_;
    NodeSet echo_senders_;
    NodeSet ready_senders_;
    bool sent_echo_ = false;
    bool sent_ready_ = false;
    bool delivered_ = false;
};

/// All BRB instances of one node, indexed by (row, column).
class Endpoint {
public:
    Endpoint(NodeId self, std::uint32_t n, std::uint32_t f);

    NodeId self() const { return self_; }
    const Thresholds& quorum() const { return thresholds_; }

    /// Starts a broadcast of `vertex` (authored by this node); the returned
    /// INIT must be sent to all n nodes, self included. Throws
    /// DuplicateBroadcastError for a second call on the same slot.
    Message rbcast(VertexPtr vertex);

    Outcome on_message(const Message& msg);

    const Instance* find(VertexId broadcast) const;
    std::uint64_t deliveries() const { return deliveries_; }

private:
    Instance& instance(VertexId broadcast);

    NodeId self_;
    std::uint32_t n_;
    Thresholds thresholds_;
    // rows_[row][column]
    std::vector<std::vector<Instance>> rows_;
    std::vector<std::vector<bool>> started_;
    std::uint64_t deliveries_ = 0;
};

}  // namespace dagfair::brb
