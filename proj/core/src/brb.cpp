#include "dagfair/brb.hpp"

#include <string>

namespace dagfair::brb {

const char* to_string(Kind kind) {
    switch (kind) {
        case Kind::init: return "INIT";
        case Kind::echo: return "ECHO";
        case Kind::ready: return "READY";
    }
    return "?";
}

Thresholds thresholds(std::uint32_t n, std::uint32_t f) {
    if (n < 3 * f + 1) {
        throw std::invalid_argument("BRB needs n >= 3f+1 (n=" + std::to_string(n) + ", f=" + std::to_string(f) + ")");
    }
    return Thresholds{(n + f) / 2 + 1, f + 1, 2 * f + 1};
}

Message Instance::make(Kind kind) const {
    return Message{kind, broadcast_, *digest_, self_, nullptr};
}

void Instance::check_digest(const Message& msg) {
    if (!digest_) {
        digest_ = msg.digest;
    } else if (*digest_ != msg.digest) {
        throw EquivocationError("conflicting digests for broadcast (" + std::to_string(broadcast_.row) + "," +
                                std::to_string(broadcast_.column) + ")");
    }
}

Outcome Instance::handle(const Message& msg, const Thresholds& t) {
    Outcome out;
    check_digest(msg);
    switch (msg.kind) {
        case Kind::init:
            if (!payload_) payload_ = msg.payload;
            if (!sent_echo_) {
                sent_echo_ = true;
                out.outbound.push_back(make(Kind::echo));
            }
            break;
        case Kind::echo:
            if (echo_senders_.contains(msg.sender)) return out;
            echo_senders_.insert(msg.sender);
            break;
        case Kind::ready:
            if (ready_senders_.contains(msg.sender)) return out;
            ready_senders_.insert(msg.sender);
            break;
    }
    if (!sent_ready_ &&
        (echo_senders_.size() >= t.echo_to_ready || ready_senders_.size() >= t.ready_to_ready)) {
        sent_ready_ = true;
        out.outbound.push_back(make(Kind::ready));
    }
    // Delivery needs the READY quorum and the payload from the INIT.
    if (!delivered_ && payload_ && ready_senders_.size() >= t.ready_to_deliver) {
        delivered_ = true;
        out.delivered = payload_;
    }
    return out;
}

Endpoint::Endpoint(NodeId self, std::uint32_t n, std::uint32_t f)
    : self_(self), n_(n), thresholds_(thresholds(n, f)), rows_(n), started_(n) {}

Instance& Endpoint::instance(VertexId broadcast) {
    if (broadcast.row >= n_) throw std::out_of_range("broadcast row out of range");
    auto& row = rows_[broadcast.row];
    if (row.size() <= broadcast.column) {
        const auto old = row.size();
        row.resize(broadcast.column + 1);
        for (auto c = old; c < row.size(); ++c) row[c] = Instance(VertexId{broadcast.row, static_cast<std::uint32_t>(c)}, self_);
    }
    return row[broadcast.column];
}

const Instance* Endpoint::find(VertexId broadcast) const {
    if (broadcast.row >= n_) return nullptr;
    const auto& row = rows_[broadcast.row];
    if (row.size() <= broadcast.column) return nullptr;
    return &row[broadcast.column];
}

Message Endpoint::rbcast(VertexPtr vertex) {
    const VertexId id = vertex->id;
    if (id.row != self_) throw std::logic_error("rbcast of a vertex authored by another node");
    auto& started = started_[id.row];
    if (started.size() <= id.column) started.resize(id.column + 1, false);
    if (started[id.column]) {
        throw DuplicateBroadcastError("second broadcast for (" + std::to_string(id.row) + "," +
                                      std::to_string(id.column) + ")");
    }
    started[id.column] = true;
    return Message{Kind::init, id, vertex->digest, self_, std::move(vertex)};
}

Outcome Endpoint::on_message(const Message& msg) {
    Outcome out = instance(msg.broadcast).handle(msg, thresholds_);
    if (out.delivered) ++deliveries_;
    return out;
}

}  // namespace dagfair::brb
