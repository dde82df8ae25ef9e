#pragma once

#include <cstdint>
#include <optional>
#include <queue>
#include <vector>

#include "podsim/errors.hpp"
#include "podsim/time.hpp"

namespace podsim {

enum class EventKind { Arrival, Breakpoint, ControlTick, PeriodBoundary, End };

struct EventRecord {
    SimTime due = 0;
    EventKind kind = EventKind::End;
    std::int64_t target = -1;    // entity id, meaning depends on kind
    std::uint64_t seq = 0;       // insertion order, breaks due-time ties
};

// Pending-event set plus the simulation clock. Events with equal due times
// fire in insertion order, which makes the whole run a deterministic total
// order.
class EventQueue {
public:
    SimTime now() const { return now_; }

    std::uint64_t schedule(SimTime due, EventKind kind, std::int64_t target = -1) {
        if (due < now_) {
            throw SimInvariantError("schedule in the past: due=" + std::to_string(due) +
                                    " now=" + std::to_string(now_));
        }
        EventRecord ev{due, kind, target, next_seq_++};
        heap_.push(ev);
        return ev.seq;
    }

    bool empty() const { return heap_.empty(); }
    std::size_t size() const { return heap_.size(); }

    std::optional<SimTime> next_due() const {
        if (heap_.empty()) return std::nullopt;
        return heap_.top().due;
    }

    // Pops the earliest event and advances the clock to it.
    EventRecord pop() {
        sim_check(!heap_.empty(), "pop from empty event queue");
        EventRecord ev = heap_.top();
        heap_.pop();
        advance_to(ev.due);
        return ev;
    }

    void advance_to(SimTime t) {
        sim_check(t >= now_, "clock moved backwards");
        now_ = t;
    }

private:
    struct Later {
        bool operator()(const EventRecord& a, const EventRecord& b) const {
            if (a.due != b.due) return a.due > b.due;
            return a.seq > b.seq;
        }
    };

    SimTime now_ = 0;
    std::uint64_t next_seq_ = 0;
    std::priority_queue<EventRecord, std::vector<EventRecord>, Later> heap_;
};

}  // namespace podsim
