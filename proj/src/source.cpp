#include "xlsim/source.hpp"

#include <cassert>

namespace xlsim {

int apply_feedback(SourceState& state, const GopFeedback& fb, const SourcePolicy& policy,
                   int top_index) {
    assert(fb.session == state.session_id);

    if (fb.ecn_marked || fb.loss_seen) {
        state.current_variant_index =
            std::max(0, state.current_variant_index - policy.downshift_step);
        state.clean_gops = 0;
    } else {
        ++state.clean_gops;
        if (state.clean_gops >= policy.upshift_clean_gops) {
            state.current_variant_index = std::min(top_index, state.current_variant_index + 1);
            state.clean_gops = 0;
        }
    }
    return state.current_variant_index;
}

}  // namespace xlsim
