#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <queue>
#include <vector>

#include "xlsim/errors.hpp"
#include "xlsim/event.hpp"
#include "xlsim/sim_time.hpp"

namespace xlsim {

// Handle for a scheduled event; currently just its sequence number.
using EventHandle = std::uint64_t;

// Min-ordered pending set keyed by (fire_at, seq). Pop order is
// non-decreasing in fire_at; ties resolve by ascending seq, i.e. insertion
// order.
class EventQueue {
  public:
    std::uint64_t push(SimTime at, EventPayload payload) {
        const std::uint64_t seq = next_seq_++;
        heap_.push(SimEvent{at, seq, std::move(payload)});
        return seq;
    }

    bool empty() const { return heap_.empty(); }
    const SimEvent& top() const { return heap_.top(); }
    void pop() { heap_.pop(); }
    std::size_t size() const { return heap_.size(); }

  private:
    struct Later {
        bool operator()(const SimEvent& a, const SimEvent& b) const {
            if (a.fire_at != b.fire_at) return a.fire_at > b.fire_at;
            return a.seq > b.seq;
        }
    };

    std::priority_queue<SimEvent, std::vector<SimEvent>, Later> heap_;
    std::uint64_t next_seq_ = 0;
};

// Deterministic single-threaded event loop. One Engine per run; a run owns
// all mutable state and may be moved between threads but never shared.
class Engine {
  public:
    using Handler = std::function<void(const SimEvent&)>;

    SimTime now() const { return clock_; }
    std::uint64_t dispatched() const { return dispatched_; }

    void on(EventKind kind, Handler handler) {
        handlers_[static_cast<std::size_t>(kind)] = std::move(handler);
    }

    // pre: at >= now(). Events may be scheduled for the current instant.
    EventHandle schedule(SimTime at, EventPayload payload);

    // Dispatches every pending event with fire_at <= end in (fire_at, seq)
    // order, then advances the clock to end. Returns the final clock.
    SimTime run_until(SimTime end);

    // Test hook: observes every dispatch in order.
    void set_trace(std::function<void(const SimEvent&)> trace) { trace_ = std::move(trace); }

  private:
    EventQueue queue_;
    SimTime clock_ = SimTime::zero();
    std::uint64_t dispatched_ = 0;
    std::array<Handler, kEventKindCount> handlers_{};
    std::function<void(const SimEvent&)> trace_;
};

}  // namespace xlsim
