#pragma once

#include <cstdint>
#include <random>

namespace xlsim {

// One seeded generator per purpose, derived from the run seed by a fixed
// stream offset. Draws for one purpose never perturb another stream's
// sequence (adding a metric must not move arrival times).
class RngStream {
  public:
    RngStream(std::uint64_t run_seed, std::uint64_t stream_offset) {
        std::seed_seq seq{run_seed, stream_offset};
        gen_.seed(seq);
    }

    std::uint64_t next_u64() { return gen_(); }

    // Integer in [0, n) via multiply-high. std::uniform_int_distribution is
    // implementation-defined and would not reproduce across toolchains.
    std::uint64_t next_below(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(gen_()) * n) >> 64);
    }

    // Canonical double in [0, 1) with 53 random bits.
    double next_unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  private:
    std::mt19937_64 gen_;
};

struct RunRng {
    explicit RunRng(std::uint64_t seed) : arrival(seed, 0), jitter(seed, 1) {}

    RngStream arrival;  // session request offsets
    RngStream jitter;   // reserved for per-packet perturbations
};

}  // namespace xlsim
