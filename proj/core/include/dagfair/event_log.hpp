#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dagfair/types.hpp"

namespace dagfair::log {

enum class Kind : std::uint8_t { send, recv, brb_init, brb_deliver, finalize, wave_formed };

std::string_view to_string(Kind kind);
/// Throws std::invalid_argument on an unknown name.
Kind parse_kind(std::string_view text);

/// One lifecycle observation. `tx` is a transaction id for every kind but
/// WAVE_FORMED, where it is the leader digest in hex. `aux` is the ledger
/// position for FINALIZE and the wave index for WAVE_FORMED.
struct EventRecord {
    Tick tick = 0;
    Kind kind = Kind::send;
    std::optional<NodeId> node;
    std::string tx;
    std::optional<std::uint64_t> aux;

    friend bool operator==(const EventRecord&, const EventRecord&) = default;
};

std::string digest_hex(Digest d);

/// One JSON object per line, keys in the order tick, kind, node, tx, aux;
/// absent optionals are omitted.
std::string to_json_line(const EventRecord& r);
EventRecord from_json_line(std::string_view line);

void write_jsonl(std::ostream& out, const std::vector<EventRecord>& records);
/// Reads every non-empty line; throws std::runtime_error with the line
/// number on malformed input.
std::vector<EventRecord> read_jsonl(std::istream& in);

}  // namespace dagfair::log
