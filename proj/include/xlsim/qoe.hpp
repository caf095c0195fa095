#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "xlsim/link.hpp"
#include "xlsim/media.hpp"

namespace xlsim {

struct QoeConfig {
    double loss_floor_psnr = 20.0;  // dB scored for a frame with any packet lost
    // Upper cut points for MOS 1..4; strictly above the last bin is MOS 5.
    // Bins are half-open at the top: psnr <= t[0] -> 1, (t[0], t[1]] -> 2, ...
    std::array<double, 4> mos_thresholds{20.0, 25.0, 31.0, 37.0};
};

// PSNR contributed by one frame: the sending variant's reference PSNR when
// every packet arrived, the loss floor when any packet was dropped.
inline double frame_psnr(const RateVariant& variant_at_send, bool delivered,
                         const QoeConfig& cfg) {
    return delivered ? variant_at_send.ref_psnr : cfg.loss_floor_psnr;
}

// Five-level PSNR-to-MOS mapping, monotone non-decreasing and total on
// [0, inf).
int psnr_to_mos(double psnr, const QoeConfig& cfg);

struct SessionQuality {
    SessionId session_id = 0;
    std::uint64_t frames_sent = 0;
    std::uint64_t frames_delivered = 0;
    std::uint64_t frames_lost = 0;   // any packet of the frame dropped
    double mean_psnr = 0.0;          // dB, unweighted over resolved frames
    int mos = 1;
};

struct RunMetrics {
    int admitted = 0;
    int rejected = 0;
    double drop_ratio = 0.0;   // bytes_dropped / bytes_arrived, 0 when idle
    double utilization = 0.0;  // bytes_delivered * 8 / (capacity * duration)
    std::vector<SessionQuality> per_session;  // admitted sessions only
};

// Raw per-session counts accumulated during a run. Frames still in flight
// at the horizon were sent but never resolve; they are excluded from the
// PSNR mean.
struct SessionTally {
    SessionId session_id = 0;
    std::uint64_t frames_sent = 0;
    std::uint64_t frames_delivered = 0;
    std::uint64_t frames_lost = 0;
    std::uint64_t frames_resolved = 0;
    double psnr_sum = 0.0;  // over resolved frames
};

// An admitted session that never saw a resolved frame scores the loss floor.
SessionQuality score_session(const SessionTally& tally, const QoeConfig& cfg);

// Rolls link counters and session tallies into run-level metrics.
// pre: RunEnd dispatched (`run_ended`); unresolved GoPs are only legal then.
RunMetrics finalize_run(const QueueState& counters, const std::vector<SessionTally>& admitted,
                        int rejected, std::int64_t capacity, double duration_s,
                        const QoeConfig& cfg, bool run_ended, std::size_t unresolved_gops);

}  // namespace xlsim
