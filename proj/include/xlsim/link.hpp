#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <vector>

#include "xlsim/errors.hpp"
#include "xlsim/event.hpp"
#include "xlsim/sim_time.hpp"

namespace xlsim {

struct LinkConfig {
    std::int64_t capacity = 2'000'000;  // bits/s
    int queue_capacity = 50;            // packets, queued + in service
    double ecn_threshold = 0.65;        // fraction of queue_capacity
    SimTime one_way_delay = SimTime::from_usec(10'000);
};

// Byte counters for the shared link. Conservation holds at every instant:
// bytes_arrived == bytes_delivered + bytes_dropped + bytes_in_system.
struct QueueState {
    int occupancy = 0;  // packets queued or in service
    bool busy = false;
    std::uint64_t bytes_arrived = 0;
    std::uint64_t bytes_dropped = 0;
    std::uint64_t bytes_delivered = 0;
    std::uint64_t bytes_marked = 0;
    std::uint64_t bytes_in_system = 0;
    std::uint64_t packets_dropped = 0;
    std::uint64_t packets_marked = 0;
};

// Drop-tail FIFO serviced at link capacity, with deterministic threshold ECN
// marking: an accepted packet is marked iff post-arrival occupancy reaches
// ceil(ecn_threshold * queue_capacity). The link is passive; the caller
// schedules the ServiceComplete events it asks for.
class BottleneckLink {
  public:
    struct Accepted {
        bool marked = false;
        // Set when the packet entered an idle link and service must start.
        std::optional<SimTime> start_service_for;  // transmission duration
    };
    struct Dropped {};

    struct EnqueueResult {
        bool dropped = false;
        Accepted accepted;  // valid when !dropped
    };

    struct ServiceResult {
        Packet delivered;
        SimTime delivered_at;  // arrival at the receiver (now + one_way_delay)
        // Next head-of-line transmission duration, if the queue is nonempty.
        std::optional<SimTime> next_service;
    };

    explicit BottleneckLink(LinkConfig cfg);

    EnqueueResult enqueue(const Packet& pkt, SimTime now);
    ServiceResult service_complete(SimTime now);

    SimTime transmission_time(std::uint32_t size_bytes) const;
    int mark_threshold_packets() const { return mark_threshold_; }
    const QueueState& state() const { return state_; }
    const LinkConfig& config() const { return cfg_; }

    // Throws InvariantViolation if the byte-conservation identity is broken.
    void check_conservation() const;

  private:
    LinkConfig cfg_;
    int mark_threshold_ = 0;
    QueueState state_;
    std::deque<Packet> fifo_;  // front = in service when busy
};

// Assembles the per-GoP acknowledgment. A GoP's feedback exists once every
// one of its packets is delivered or dropped; it reports whether any packet
// was marked and whether any was dropped, and fires one one-way delay after
// the last packet's delivery-or-drop time.
class GopTracker {
  public:
    struct Outcome {
        GopFeedback feedback;
        SimTime feedback_at;
    };

    void open_gop(SessionId session, std::uint32_t gop, int variant_index, int packet_count);

    // Per-packet resolutions; return the GoP outcome when it completes.
    std::optional<Outcome> packet_dropped(const Packet& pkt, SimTime drop_time,
                                          SimTime one_way_delay);
    std::optional<Outcome> packet_delivered(const Packet& pkt, SimTime delivered_at,
                                            bool was_marked, SimTime one_way_delay);

    int variant_of(SessionId session, std::uint32_t gop) const;
    bool all_resolved() const { return open_.empty(); }
    std::size_t open_gops() const { return open_.size(); }

  private:
    struct Progress {
        int variant_index = 0;
        int pending = 0;
        bool any_marked = false;
        bool any_lost = false;
        SimTime last_resolution;
    };

    std::optional<Outcome> resolve(const Packet& pkt, SimTime at, bool marked, bool lost,
                                   SimTime one_way_delay);

    std::map<std::pair<SessionId, std::uint32_t>, Progress> open_;
};

}  // namespace xlsim
