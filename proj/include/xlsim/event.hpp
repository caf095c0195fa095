#pragma once

#include <cstdint>
#include <variant>

#include "xlsim/sim_time.hpp"

namespace xlsim {

using SessionId = std::uint32_t;

// One packet of one frame of one GoP, as seen on the wire.
struct Packet {
    SessionId session = 0;
    std::uint32_t gop = 0;     // per-session GoP ordinal
    std::uint16_t frame = 0;   // frame index within the GoP
    std::uint32_t size = 0;    // bytes
    bool marked = false;       // congestion-experienced bit, set by the queue
};

struct GopFeedback {
    SessionId session = 0;
    std::uint32_t gop = 0;
    bool ecn_marked = false;  // any packet of the GoP was marked
    bool loss_seen = false;   // any packet of the GoP was dropped
};

// Event payloads. The payload alternative IS the event kind, so a payload
// can never disagree with its tag.
struct SessionRequestEv {
    SessionId session = 0;
};
struct GopBoundaryEv {
    SessionId session = 0;
};
struct PacketArrivalEv {
    Packet packet;
};
struct ServiceCompleteEv {};
struct FeedbackDeliveryEv {
    GopFeedback feedback;
};
struct MeasurementTickEv {};
struct RunEndEv {};

using EventPayload = std::variant<SessionRequestEv, GopBoundaryEv, PacketArrivalEv,
                                  ServiceCompleteEv, FeedbackDeliveryEv,
                                  MeasurementTickEv, RunEndEv>;

enum class EventKind : std::uint8_t {
    SessionRequest = 0,
    GopBoundary,
    PacketArrival,
    ServiceComplete,
    FeedbackDelivery,
    MeasurementTick,
    RunEnd,
};
inline constexpr std::size_t kEventKindCount = 7;

struct SimEvent {
    SimTime fire_at;
    std::uint64_t seq = 0;  // insertion-order tie break, unique per run
    EventPayload payload;

    EventKind kind() const { return static_cast<EventKind>(payload.index()); }
};

}  // namespace xlsim
