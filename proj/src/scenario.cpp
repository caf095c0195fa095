#include "xlsim/scenario.hpp"

#include <cassert>
#include <chrono>
#include <map>
#include <string>

#include "xlsim/engine.hpp"
#include "xlsim/source.hpp"

namespace xlsim {

namespace {

constexpr std::int64_t kUsecPerSec = 1'000'000;

std::uint64_t fnv1a(std::uint64_t h, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
        h ^= (v >> (i * 8)) & 0xff;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// One simulation run: owns the engine, the shared link, the admission edge,
// and every session's source and tally. Single-threaded; distinct Run
// objects are independent.
class Run {
  public:
    Run(const ScenarioConfig& cfg, std::int64_t capacity, Mode mode)
        : cfg_(cfg),
          capacity_(capacity),
          mode_(mode),
          ladder_(VariantLadder::build(cfg.ladder.r_min, cfg.ladder.r_max, cfg.ladder.psnr_min,
                                       cfg.ladder.psnr_max)),
          link_(make_link_config(cfg, capacity)),
          meter_(cfg.estimator, SimTime::from_seconds(cfg.window), cfg.ewma_alpha),
          admission_(cfg.admission_for(capacity, mode)) {
        gop_duration_ = SimTime::from_usec(static_cast<std::int64_t>(cfg.gop.gop_len) *
                                           kUsecPerSec / cfg.gop.fps);
        duration_ = SimTime::from_seconds(cfg.duration);
        initial_variant_ = cfg.source.initial_variant.value_or(cfg.sla_variant);
        sla_rate_ = ladder_.at(cfg.sla_variant).bitrate;
    }

    RunReport execute();

  private:
    struct FrameProgress {
        int pending = 0;
        bool any_lost = false;
        bool arrived = false;  // at least one packet dispatched
    };

    struct Session {
        SessionRequest request;
        Decision decision = Decision::Reject;
        SimTime decided_at;
        double measured_at_decision = 0.0;
        bool admitted = false;
        SourceState src;
        SessionTally tally;
        std::vector<int> gop_variants;  // indexed by GoP ordinal
        std::map<std::pair<std::uint32_t, std::uint16_t>, FrameProgress> open_frames;
    };

    static LinkConfig make_link_config(const ScenarioConfig& cfg, std::int64_t capacity) {
        LinkConfig lc = cfg.link;
        lc.capacity = capacity;
        return lc;
    }

    void handle_request(const SessionRequestEv& ev);
    void handle_gop_boundary(const GopBoundaryEv& ev);
    void handle_packet_arrival(const PacketArrivalEv& ev);
    void handle_service_complete();
    void handle_feedback(const FeedbackDeliveryEv& ev);
    void resolve_frame_packet(const Packet& pkt, bool lost);
    void maybe_emit_feedback(const std::optional<GopTracker::Outcome>& outcome);

    const ScenarioConfig& cfg_;
    std::int64_t capacity_;
    Mode mode_;
    VariantLadder ladder_;
    Engine engine_;
    BottleneckLink link_;
    RateMeter meter_;
    AdmissionController admission_;
    std::vector<Session> sessions_;
    GopTracker tracker_;
    SimTime gop_duration_;
    SimTime duration_;
    int initial_variant_ = 0;
    double sla_rate_ = 0.0;
    int active_count_ = 0;
    bool run_ended_ = false;
    std::uint64_t digest_ = 0xcbf29ce484222325ULL;
};

void Run::handle_request(const SessionRequestEv& ev) {
    Session& s = sessions_.at(ev.session);
    const Decision d = admission_.decide(s.request, meter_.measurement(), active_count_);
    s.decision = d;
    s.decided_at = engine_.now();
    s.measured_at_decision = meter_.measurement().measured_rate;
    if (d != Decision::Admit) return;  // rejected sessions leave silently

    ++active_count_;
    s.admitted = true;
    s.src.session_id = ev.session;
    s.src.current_variant_index = initial_variant_;
    s.src.next_gop_at = engine_.now();
    s.tally.session_id = ev.session;
    // First GoP starts at admission time, not on a global grid.
    engine_.schedule(engine_.now(), GopBoundaryEv{ev.session});
}

void Run::handle_gop_boundary(const GopBoundaryEv& ev) {
    Session& s = sessions_.at(ev.session);
    assert(s.admitted);

    const RateVariant& variant = ladder_.at(s.src.current_variant_index);
    const auto frames = plan_gop(variant, cfg_.gop);
    const std::uint32_t gop = s.src.next_gop_ordinal++;
    assert(gop == static_cast<std::uint32_t>(s.gop_variants.size()));
    s.gop_variants.push_back(variant.index);

    int total_packets = 0;
    for (const auto& f : frames) total_packets += f.packet_count;
    if (total_packets > 0) {
        tracker_.open_gop(ev.session, gop, variant.index, total_packets);
    }

    const SimTime start = engine_.now();
    for (const auto& f : frames) {
        if (f.packet_count == 0) continue;
        const SimTime at = start + SimTime::from_usec(static_cast<std::int64_t>(f.frame_index) *
                                                      kUsecPerSec / cfg_.gop.fps);
        auto& progress = s.open_frames[{gop, static_cast<std::uint16_t>(f.frame_index)}];
        progress.pending = f.packet_count;
        for (int k = 0; k < f.packet_count; ++k) {
            Packet pkt;
            pkt.session = ev.session;
            pkt.gop = gop;
            pkt.frame = static_cast<std::uint16_t>(f.frame_index);
            pkt.size = static_cast<std::uint32_t>(packet_size(f, cfg_.gop.payload_bytes, k));
            engine_.schedule(at, PacketArrivalEv{pkt});
        }
    }

    s.src.next_gop_at = start + gop_duration_;
    engine_.schedule(s.src.next_gop_at, GopBoundaryEv{ev.session});
}

void Run::resolve_frame_packet(const Packet& pkt, bool lost) {
    Session& s = sessions_.at(pkt.session);
    const auto key = std::make_pair(pkt.gop, pkt.frame);
    auto it = s.open_frames.find(key);
    assert(it != s.open_frames.end());
    FrameProgress& f = it->second;

    f.any_lost = f.any_lost || lost;
    if (--f.pending > 0) return;

    const RateVariant& variant = ladder_.at(s.gop_variants.at(pkt.gop));
    s.tally.psnr_sum += frame_psnr(variant, !f.any_lost, cfg_.qoe);
    ++s.tally.frames_resolved;
    if (f.any_lost) {
        ++s.tally.frames_lost;
    } else {
        ++s.tally.frames_delivered;
    }
    s.open_frames.erase(it);
}

void Run::maybe_emit_feedback(const std::optional<GopTracker::Outcome>& outcome) {
    if (!outcome) return;
    engine_.schedule(outcome->feedback_at, FeedbackDeliveryEv{outcome->feedback});
}

void Run::handle_packet_arrival(const PacketArrivalEv& ev) {
    const Packet& pkt = ev.packet;
    Session& s = sessions_.at(pkt.session);

    auto frame_it = s.open_frames.find(std::make_pair(pkt.gop, pkt.frame));
    assert(frame_it != s.open_frames.end());
    if (!frame_it->second.arrived) {
        frame_it->second.arrived = true;
        ++s.tally.frames_sent;
    }

    // Admission measures offered load at the ingress, ahead of the queue.
    meter_.add_bytes(pkt.size);

    const auto res = link_.enqueue(pkt, engine_.now());
#ifndef NDEBUG
    link_.check_conservation();
#endif
    if (res.dropped) {
        resolve_frame_packet(pkt, /*lost=*/true);
        maybe_emit_feedback(
            tracker_.packet_dropped(pkt, engine_.now(), cfg_.link.one_way_delay));
        return;
    }
    if (res.accepted.start_service_for) {
        engine_.schedule(engine_.now() + *res.accepted.start_service_for, ServiceCompleteEv{});
    }
}

void Run::handle_service_complete() {
    const auto res = link_.service_complete(engine_.now());
#ifndef NDEBUG
    link_.check_conservation();
#endif
    if (res.next_service) {
        engine_.schedule(engine_.now() + *res.next_service, ServiceCompleteEv{});
    }
    resolve_frame_packet(res.delivered, /*lost=*/false);
    maybe_emit_feedback(tracker_.packet_delivered(res.delivered, res.delivered_at,
                                                  res.delivered.marked,
                                                  cfg_.link.one_way_delay));
}

void Run::handle_feedback(const FeedbackDeliveryEv& ev) {
    Session& s = sessions_.at(ev.feedback.session);
    apply_feedback(s.src, ev.feedback, cfg_.source, ladder_.top_index());
}

RunReport Run::execute() {
    const auto wall_start = std::chrono::steady_clock::now();

    RunRng rng(cfg_.seed);
    const auto requests = generate_arrivals(cfg_, sla_rate_, rng.arrival);
    sessions_.resize(requests.size());
    for (const auto& req : requests) {
        sessions_.at(req.session_id).request = req;
        engine_.schedule(req.requested_at, SessionRequestEv{req.session_id});
    }

    engine_.on(EventKind::SessionRequest, [this](const SimEvent& ev) {
        handle_request(std::get<SessionRequestEv>(ev.payload));
    });
    engine_.on(EventKind::GopBoundary, [this](const SimEvent& ev) {
        handle_gop_boundary(std::get<GopBoundaryEv>(ev.payload));
    });
    engine_.on(EventKind::PacketArrival, [this](const SimEvent& ev) {
        handle_packet_arrival(std::get<PacketArrivalEv>(ev.payload));
    });
    engine_.on(EventKind::ServiceComplete, [this](const SimEvent&) { handle_service_complete(); });
    engine_.on(EventKind::FeedbackDelivery, [this](const SimEvent& ev) {
        handle_feedback(std::get<FeedbackDeliveryEv>(ev.payload));
    });
    engine_.on(EventKind::MeasurementTick, [this](const SimEvent&) {
        meter_.on_tick(engine_.now());
        engine_.schedule(engine_.now() + SimTime::from_seconds(cfg_.window), MeasurementTickEv{});
    });
    engine_.on(EventKind::RunEnd, [this](const SimEvent&) { run_ended_ = true; });

    engine_.set_trace([this](const SimEvent& ev) {
        digest_ = fnv1a(digest_, static_cast<std::uint64_t>(ev.fire_at.usec));
        digest_ = fnv1a(digest_, ev.seq);
        digest_ = fnv1a(digest_, static_cast<std::uint64_t>(ev.payload.index()));
    });

    const SimTime window = SimTime::from_seconds(cfg_.window);
    if (window <= duration_ && duration_ > SimTime::zero()) {
        engine_.schedule(window, MeasurementTickEv{});
    }
    if (duration_ > SimTime::zero() || !requests.empty()) {
        engine_.schedule(duration_, RunEndEv{});
    }

    engine_.run_until(duration_);

    link_.check_conservation();

    std::vector<SessionTally> admitted;
    std::vector<SessionOutcome> decisions;
    int rejected = 0;
    for (const auto& s : sessions_) {
        decisions.push_back(
            SessionOutcome{s.request, s.decision, s.decided_at, s.measured_at_decision});
        if (s.admitted) {
            admitted.push_back(s.tally);
        } else {
            ++rejected;
        }
    }
    if (static_cast<std::size_t>(rejected) + admitted.size() != sessions_.size()) {
        throw InvariantViolation("admitted + rejected != requests issued");
    }

    RunReport report;
    report.mode = mode_;
    report.capacity = capacity_;
    report.run_id = mode_name(mode_) + "-" + std::to_string(capacity_ / 1000);
    report.config = cfg_;
    report.metrics = finalize_run(link_.state(), admitted, rejected, capacity_, cfg_.duration,
                                  cfg_.qoe, run_ended_ || duration_ == SimTime::zero(),
                                  tracker_.open_gops());
    report.decisions = std::move(decisions);
    report.events_dispatched = engine_.dispatched();
    report.wall_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - wall_start)
                         .count();

    // Counter digest so a determinism check also covers accounting state.
    digest_ = fnv1a(digest_, link_.state().bytes_arrived);
    digest_ = fnv1a(digest_, link_.state().bytes_delivered);
    digest_ = fnv1a(digest_, link_.state().bytes_dropped);
    digest_ = fnv1a(digest_, link_.state().bytes_marked);
    report.trace_digest = digest_;
    return report;
}

}  // namespace

std::vector<SessionRequest> generate_arrivals(const ScenarioConfig& cfg, double sla_rate,
                                              RngStream& arrival) {
    std::vector<SessionRequest> out;
    out.reserve(static_cast<std::size_t>(cfg.max_requests));
    for (int k = 0; k < cfg.max_requests; ++k) {
        SessionRequest req;
        req.session_id = static_cast<SessionId>(k);
        req.requested_at = SimTime::from_usec(static_cast<std::int64_t>(k) * kUsecPerSec +
                                              static_cast<std::int64_t>(
                                                  arrival.next_below(kUsecPerSec)));
        req.sla_rate = sla_rate;
        out.push_back(req);
    }
    return out;
}

RunReport run_single(const ScenarioConfig& cfg, std::int64_t capacity, Mode mode) {
    cfg.validate();
    return Run(cfg, capacity, mode).execute();
}

namespace {

std::vector<RunReport> run_modes(const ScenarioConfig& cfg, const std::vector<Mode>& modes) {
    cfg.validate();
    std::vector<RunReport> reports;
    for (Mode mode : modes) {
        for (std::int64_t capacity : cfg.capacity_list) {
            RunReport rep = Run(cfg, capacity, mode).execute();
            if (cfg.verify_determinism) {
                const RunReport replay = Run(cfg, capacity, mode).execute();
                if (replay.trace_digest != rep.trace_digest) {
                    throw InvariantViolation("determinism violated for run " + rep.run_id);
                }
            }
            reports.push_back(std::move(rep));
        }
    }
    return reports;
}

}  // namespace

std::vector<RunReport> run_scenario(const ScenarioConfig& cfg) {
    return run_modes(cfg, {cfg.mode});
}

std::vector<RunReport> run_sweep(const ScenarioConfig& cfg) {
    return run_modes(cfg, {Mode::CrossLayer, Mode::RaOnly});
}

}  // namespace xlsim
