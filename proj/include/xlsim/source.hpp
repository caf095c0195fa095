#pragma once

#include <algorithm>
#include <optional>

#include "xlsim/event.hpp"
#include "xlsim/media.hpp"
#include "xlsim/sim_time.hpp"

namespace xlsim {

// Rate controller knobs. Downshift is immediate on a marked or lossy GoP;
// upshift waits for `upshift_clean_gops` consecutive clean GoPs. The new
// index takes effect at the next GoP boundary.
struct SourcePolicy {
    int downshift_step = 1;      // variants dropped per marked/lossy GoP
    int upshift_clean_gops = 2;  // consecutive clean GoPs required for +1
    // Starting variant; unset means the variant whose bitrate equals the
    // session's SLA rate.
    std::optional<int> initial_variant;
};

struct SourceState {
    SessionId session_id = 0;
    int current_variant_index = 0;  // always within [0, ladder size)
    int clean_gops = 0;             // consecutive clean GoPs; resets on a mark
    std::uint32_t next_gop_ordinal = 0;
    SimTime next_gop_at;
};

// Applies one per-GoP acknowledgment to the controller state. Returns the
// new variant index. A marked feedback never raises the index, an unmarked
// one never lowers it, and the index never leaves [0, top].
int apply_feedback(SourceState& state, const GopFeedback& fb, const SourcePolicy& policy,
                   int top_index);

}  // namespace xlsim
