#include "dagfair/event_log.hpp"

#include <array>
#include <istream>
#include <nlohmann/json.hpp>
#include <ostream>
#include <stdexcept>

namespace dagfair::log {

namespace {

constexpr std::array<std::string_view, 6> kKindNames{"SEND", "RECV", "BRB_INIT", "BRB_DELIVER", "FINALIZE",
                                                     "WAVE_FORMED"};

void append_escaped(std::string& out, std::string_view s) {
    for (const char ch : s) {
        if (ch == '"' || ch == '\\') out.push_back('\\');
        out.push_back(ch);
    }
}

}  // namespace

std::string_view to_string(Kind kind) { return kKindNames[static_cast<std::size_t>(kind)]; }

Kind parse_kind(std::string_view text) {
    for (std::size_t i = 0; i < kKindNames.size(); ++i) {
        if (kKindNames[i] == text) return static_cast<Kind>(i);
    }
    throw std::invalid_argument("unknown event kind '" + std::string(text) + "'");
}

std::string digest_hex(Digest d) {
    static constexpr char hex[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = hex[d & 0xf];
        d >>= 4;
    }
    return out;
}

std::string to_json_line(const EventRecord& r) {
    std::string out = "{\"tick\":" + std::to_string(r.tick) + ",\"kind\":\"";
    out += to_string(r.kind);
    out += '"';
    if (r.node) out += ",\"node\":" + std::to_string(*r.node);
    out += ",\"tx\":\"";
    append_escaped(out, r.tx);
    out += '"';
    if (r.aux) out += ",\"aux\":" + std::to_string(*r.aux);
    out += '}';
    return out;
}

EventRecord from_json_line(std::string_view line) {
    const auto j = nlohmann::json::parse(line);
    EventRecord r;
    r.tick = j.at("tick").get<Tick>();
    r.kind = parse_kind(j.at("kind").get<std::string>());
    if (j.contains("node")) r.node = j.at("node").get<NodeId>();
    r.tx = j.at("tx").get<std::string>();
    if (j.contains("aux")) r.aux = j.at("aux").get<std::uint64_t>();
    return r;
}

void write_jsonl(std::ostream& out, const std::vector<EventRecord>& records) {
    for (const auto& r : records) out << to_json_line(r) << '\n';
}

std::vector<EventRecord> read_jsonl(std::istream& in) {
    std::vector<EventRecord> out;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (line.empty()) continue;
        try {
            out.push_back(from_json_line(line));
        } catch (const std::exception& e) {
            throw std::runtime_error("event log line " + std::to_string(number) + ": " + e.what());
        }
    }
    return out;
}

}  // namespace dagfair::log
