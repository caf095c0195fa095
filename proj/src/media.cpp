#include "xlsim/media.hpp"

#include <cassert>
#include <cmath>

namespace xlsim {

VariantLadder VariantLadder::build(double r_min, double r_max, double psnr_min,
                                   double psnr_max) {
    if (!(r_min > 0.0) || !(r_min < r_max)) {
        throw InvalidLadderBounds("ladder bitrates require 0 < r_min < r_max");
    }
    if (!(psnr_min < psnr_max)) {
        throw InvalidLadderBounds("ladder PSNR anchors require psnr_min < psnr_max");
    }

    VariantLadder ladder;
    ladder.variants_.reserve(kLadderSize);
    const double log_ratio = std::log(r_max / r_min);
    for (int i = 0; i < kLadderSize; ++i) {
        RateVariant v;
        v.index = i;
        v.quality_index = i + 1;
        if (i == 0) {
            v.bitrate = r_min;
        } else if (i == kLadderSize - 1) {
            v.bitrate = r_max;
        } else {
            v.bitrate = r_min * std::exp(log_ratio * static_cast<double>(i) /
                                         (kLadderSize - 1));
        }
        v.ref_psnr = psnr_min + (psnr_max - psnr_min) * std::log(v.bitrate / r_min) / log_ratio;
        ladder.variants_.push_back(v);
    }

    for (int i = 1; i < kLadderSize; ++i) {
        assert(ladder.variants_[i].bitrate > ladder.variants_[i - 1].bitrate);
        assert(ladder.variants_[i].ref_psnr > ladder.variants_[i - 1].ref_psnr);
    }
    return ladder;
}

std::vector<FramePlan> plan_gop(const RateVariant& variant, const GopSpec& spec) {
    assert(variant.bitrate > 0.0);
    assert(spec.fps > 0 && spec.gop_len > 0 && spec.payload_bytes > 0);

    const double gop_seconds = static_cast<double>(spec.gop_len) / spec.fps;
    const long long total =
        std::llround(variant.bitrate * gop_seconds / 8.0);
    const long long base = total / spec.gop_len;
    const long long extra = total % spec.gop_len;  // first `extra` frames get +1 byte

    std::vector<FramePlan> frames;
    frames.reserve(static_cast<std::size_t>(spec.gop_len));
    for (int k = 0; k < spec.gop_len; ++k) {
        FramePlan f;
        f.frame_index = k;
        f.size = static_cast<int>(base + (k < extra ? 1 : 0));
        f.packet_count =
            f.size == 0 ? 0 : static_cast<int>((f.size + spec.payload_bytes - 1) / spec.payload_bytes);
        frames.push_back(f);
    }
    return frames;
}

}  // namespace xlsim
