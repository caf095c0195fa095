#pragma once

#include <cstdint>
#include <vector>

#include "xlsim/errors.hpp"

namespace xlsim {

inline constexpr int kLadderSize = 30;

// One encoded quality level. quality_index is an opaque monotone label on
// the encoder's 1..31 quality scale; it carries no codec semantics here.
struct RateVariant {
    int index = 0;          // ladder position, 0 = lowest quality
    int quality_index = 1;  // 1..31, monotone in index
    double bitrate = 0.0;   // bits/second, strictly increasing in index
    double ref_psnr = 0.0;  // dB at zero loss, strictly increasing in index
};

// Fixed 30-step ladder with geometrically spaced bitrates and a logarithmic
// rate-distortion curve:
//   bitrate(i)  = r_min * (r_max/r_min)^(i/29)
//   ref_psnr(i) = psnr_min + (psnr_max - psnr_min) * ln(bitrate(i)/r_min)
//                                                  / ln(r_max/r_min)
// Both endpoints are hit exactly.
class VariantLadder {
  public:
    VariantLadder() = default;
    static VariantLadder build(double r_min, double r_max, double psnr_min, double psnr_max);

    const RateVariant& at(int index) const { return variants_.at(static_cast<std::size_t>(index)); }
    const std::vector<RateVariant>& variants() const { return variants_; }
    int size() const { return static_cast<int>(variants_.size()); }
    int top_index() const { return size() - 1; }

  private:
    std::vector<RateVariant> variants_;
};

struct GopSpec {
    int fps = 30;            // frames per second
    int gop_len = 30;        // frames per GoP
    int payload_bytes = 1000;  // packet payload unit
};

struct FramePlan {
    int frame_index = 0;  // ordinal within the GoP
    int size = 0;         // bytes
    int packet_count = 0; // ceil(size / payload)
};

// Byte size of packet `k` of a frame: full payloads first, short tail last.
inline int packet_size(const FramePlan& frame, int payload_bytes, int k) {
    const int sent = k * payload_bytes;
    const int left = frame.size - sent;
    return left < payload_bytes ? left : payload_bytes;
}

// Realizes one GoP of a variant on the wire. Total bytes are
// round(bitrate * gop_len / fps / 8), split evenly across frames with the
// remainder spread one byte each over the first frames. Pure function.
std::vector<FramePlan> plan_gop(const RateVariant& variant, const GopSpec& spec);

}  // namespace xlsim
