#include "xlsim/link.hpp"

#include <cassert>
#include <cmath>

namespace xlsim {

BottleneckLink::BottleneckLink(LinkConfig cfg) : cfg_(cfg) {
    assert(cfg_.capacity > 0);
    assert(cfg_.queue_capacity >= 1);
    assert(cfg_.ecn_threshold > 0.0 && cfg_.ecn_threshold <= 1.0);
    mark_threshold_ = static_cast<int>(
        std::ceil(cfg_.ecn_threshold * static_cast<double>(cfg_.queue_capacity)));
}

SimTime BottleneckLink::transmission_time(std::uint32_t size_bytes) const {
    // Ceiling division so accumulated service time can never outrun the link
    // (keeps utilization <= 1 under any load).
    const std::int64_t bits = static_cast<std::int64_t>(size_bytes) * 8;
    return SimTime::from_usec((bits * 1'000'000 + cfg_.capacity - 1) / cfg_.capacity);
}

BottleneckLink::EnqueueResult BottleneckLink::enqueue(const Packet& pkt, SimTime) {
    assert(pkt.size > 0);
    state_.bytes_arrived += pkt.size;

    EnqueueResult res;
    if (state_.occupancy == cfg_.queue_capacity) {
        state_.bytes_dropped += pkt.size;
        ++state_.packets_dropped;
        res.dropped = true;
        return res;
    }

    ++state_.occupancy;
    state_.bytes_in_system += pkt.size;
    fifo_.push_back(pkt);

    res.accepted.marked = state_.occupancy >= mark_threshold_;
    if (res.accepted.marked) {
        fifo_.back().marked = true;
        state_.bytes_marked += pkt.size;
        ++state_.packets_marked;
    }
    if (!state_.busy) {
        state_.busy = true;
        res.accepted.start_service_for = transmission_time(pkt.size);
    }
    return res;
}

BottleneckLink::ServiceResult BottleneckLink::service_complete(SimTime now) {
    assert(state_.busy && !fifo_.empty());

    ServiceResult res;
    res.delivered = fifo_.front();
    fifo_.pop_front();
    --state_.occupancy;
    state_.bytes_in_system -= res.delivered.size;
    state_.bytes_delivered += res.delivered.size;
    res.delivered_at = now + cfg_.one_way_delay;

    if (!fifo_.empty()) {
        res.next_service = transmission_time(fifo_.front().size);
    } else {
        state_.busy = false;
    }
    return res;
}

void BottleneckLink::check_conservation() const {
    const std::uint64_t accounted =
        state_.bytes_delivered + state_.bytes_dropped + state_.bytes_in_system;
    if (state_.bytes_arrived != accounted) {
        throw InvariantViolation("byte conservation broken: arrived " +
                                 std::to_string(state_.bytes_arrived) + " != accounted " +
                                 std::to_string(accounted));
    }
    if (state_.occupancy < 0 || state_.occupancy > cfg_.queue_capacity) {
        throw InvariantViolation("queue occupancy out of bounds");
    }
}

void GopTracker::open_gop(SessionId session, std::uint32_t gop, int variant_index,
                          int packet_count) {
    assert(packet_count > 0);
    Progress p;
    p.variant_index = variant_index;
    p.pending = packet_count;
    open_.emplace(std::make_pair(session, gop), p);
}

int GopTracker::variant_of(SessionId session, std::uint32_t gop) const {
    return open_.at(std::make_pair(session, gop)).variant_index;
}

std::optional<GopTracker::Outcome> GopTracker::resolve(const Packet& pkt, SimTime at,
                                                       bool marked, bool lost,
                                                       SimTime one_way_delay) {
    auto it = open_.find(std::make_pair(pkt.session, pkt.gop));
    assert(it != open_.end());
    Progress& p = it->second;

    p.any_marked = p.any_marked || marked;
    p.any_lost = p.any_lost || lost;
    if (at > p.last_resolution) p.last_resolution = at;
    --p.pending;
    if (p.pending > 0) return std::nullopt;

    Outcome out;
    out.feedback = GopFeedback{pkt.session, pkt.gop, p.any_marked, p.any_lost};
    out.feedback_at = p.last_resolution + one_way_delay;
    open_.erase(it);
    return out;
}

std::optional<GopTracker::Outcome> GopTracker::packet_dropped(const Packet& pkt,
                                                              SimTime drop_time,
                                                              SimTime one_way_delay) {
    return resolve(pkt, drop_time, /*marked=*/false, /*lost=*/true, one_way_delay);
}

std::optional<GopTracker::Outcome> GopTracker::packet_delivered(const Packet& pkt,
                                                                SimTime delivered_at,
                                                                bool was_marked,
                                                                SimTime one_way_delay) {
    return resolve(pkt, delivered_at, was_marked, /*lost=*/false, one_way_delay);
}

}  // namespace xlsim
