#include "xlsim/engine.hpp"

#include <string>

namespace xlsim {

EventHandle Engine::schedule(SimTime at, EventPayload payload) {
    if (at < clock_) {
        throw SchedulingInPast("schedule at t=" + std::to_string(at.usec) +
                               "us before clock t=" + std::to_string(clock_.usec) + "us");
    }
    return queue_.push(at, std::move(payload));
}

SimTime Engine::run_until(SimTime end) {
    while (!queue_.empty() && queue_.top().fire_at <= end) {
        const SimEvent ev = queue_.top();
        queue_.pop();
        // The queue is min-ordered, so no handler ever sees the clock decrease.
        clock_ = ev.fire_at;
        const auto& handler = handlers_[static_cast<std::size_t>(ev.kind())];
        if (!handler) {
            throw UnhandledEventKind("no handler for event kind " +
                                     std::to_string(ev.payload.index()));
        }
        if (trace_) trace_(ev);
        handler(ev);
        ++dispatched_;
    }
    if (end > clock_) clock_ = end;
    return clock_;
}

}  // namespace xlsim
