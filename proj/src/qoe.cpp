#include "xlsim/qoe.hpp"

#include <cassert>
#include <cmath>

#include "xlsim/errors.hpp"

namespace xlsim {

int psnr_to_mos(double psnr, const QoeConfig& cfg) {
    assert(std::isfinite(psnr) && psnr >= 0.0);
    const auto& t = cfg.mos_thresholds;
    if (psnr <= t[0]) return 1;
    if (psnr <= t[1]) return 2;
    if (psnr <= t[2]) return 3;
    if (psnr <= t[3]) return 4;
    return 5;
}

SessionQuality score_session(const SessionTally& tally, const QoeConfig& cfg) {
    SessionQuality q;
    q.session_id = tally.session_id;
    q.frames_sent = tally.frames_sent;
    q.frames_delivered = tally.frames_delivered;
    q.frames_lost = tally.frames_lost;
    q.mean_psnr = tally.frames_resolved > 0
                      ? tally.psnr_sum / static_cast<double>(tally.frames_resolved)
                      : cfg.loss_floor_psnr;
    q.mos = psnr_to_mos(q.mean_psnr, cfg);
    assert(q.frames_delivered <= q.frames_sent);
    return q;
}

RunMetrics finalize_run(const QueueState& counters, const std::vector<SessionTally>& admitted,
                        int rejected, std::int64_t capacity, double duration_s,
                        const QoeConfig& cfg, bool run_ended, std::size_t unresolved_gops) {
    if (!run_ended && unresolved_gops > 0) {
        throw IncompleteRun("finalize before RunEnd: " + std::to_string(unresolved_gops) +
                            " GoPs lack a final packet outcome");
    }

    RunMetrics m;
    m.admitted = static_cast<int>(admitted.size());
    m.rejected = rejected;
    m.drop_ratio = counters.bytes_arrived > 0
                       ? static_cast<double>(counters.bytes_dropped) /
                             static_cast<double>(counters.bytes_arrived)
                       : 0.0;
    m.utilization = duration_s > 0.0
                        ? static_cast<double>(counters.bytes_delivered) * 8.0 /
                              (static_cast<double>(capacity) * duration_s)
                        : 0.0;
    if (m.drop_ratio < 0.0 || m.drop_ratio > 1.0 || m.utilization < 0.0 ||
        m.utilization > 1.0) {
        throw InvariantViolation("drop ratio or utilization outside [0, 1]");
    }

    m.per_session.reserve(admitted.size());
    for (const auto& tally : admitted) {
        m.per_session.push_back(score_session(tally, cfg));
    }
    return m;
}

}  // namespace xlsim
