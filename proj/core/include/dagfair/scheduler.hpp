#pragma once

#include <cstdint>
#include <queue>
#include <vector>

#include "dagfair/errors.hpp"
#include "dagfair/types.hpp"

namespace dagfair {

using EventId = std::uint64_t;

/// A pending event. Equal due ticks are processed in ascending sequence.
template <class Payload>
struct Event {
    Tick due = 0;
    EventId sequence = 0;
    Payload payload;
};

/// Deterministic discrete-event queue. Single-threaded; one instance per run.
template <class Payload>
class Scheduler {
public:
    Tick now() const { return now_; }
    std::size_t pending() const { return queue_.size(); }
    bool empty() const { return queue_.empty(); }
    std::uint64_t processed() const { return processed_; }

    /// Enqueues at an absolute tick. Throws SchedulingError if `due` is in
    /// the past.
    EventId schedule_at(Tick due, Payload payload) {
        if (due < now_) {
            throw SchedulingError("event due at tick " + std::to_string(due) + " is before current tick " +
                                  std::to_string(now_));
        }
        const EventId id = next_sequence_++;
        queue_.push(Event<Payload>{due, id, std::move(payload)});
        return id;
    }

    /// Enqueues a message-style event: delays below one tick are raised to one.
    EventId schedule_after(Tick delay, Payload payload) {
        return schedule_at(now_ + (delay == 0 ? 1 : delay), std::move(payload));
    }

    /// Pops the next event with due <= limit, advancing the clock. Returns
    /// false when the queue is empty or the next event is after `limit`.
    bool pop(Event<Payload>& out, Tick limit) {
        if (queue_.empty() || queue_.top().due > limit) return false;
        // priority_queue::top is const; the payload is moved out before pop.
        out = std::move(const_cast<Event<Payload>&>(queue_.top()));
        queue_.pop();
        now_ = out.due;
        ++processed_;
        return true;
    }

private:
    struct Later {
        bool operator()(const Event<Payload>& a, const Event<Payload>& b) const {
            return a.due != b.due ? a.due > b.due : a.sequence > b.sequence;
        }
    };

    std::priority_queue<Event<Payload>, std::vector<Event<Payload>>, Later> queue_;
    Tick now_ = 0;
    EventId next_sequence_ = 0;
    std::uint64_t processed_ = 0;
};

}  // namespace dagfair
