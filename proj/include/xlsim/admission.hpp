#pragma once

#include <cstdint>
#include <unordered_set>

#include "xlsim/errors.hpp"
#include "xlsim/event.hpp"
#include "xlsim/sim_time.hpp"

namespace xlsim {

enum class Mode : std::uint8_t { CrossLayer, RaOnly };
enum class Estimator : std::uint8_t { Instantaneous, WindowAverage };

struct AdmissionConfig {
    Mode mode = Mode::CrossLayer;
    Estimator estimator = Estimator::Instantaneous;
    SimTime window = SimTime::from_usec(100'000);  // measurement window
    double ewma_alpha = 0.3;         // weight of the newest window (WindowAverage)
    std::int64_t capacity = 0;       // bits/s of the protected link
    int session_cap = 15;            // RA-only admission limit
};

struct SessionRequest {
    SessionId session_id = 0;
    SimTime requested_at;
    double sla_rate = 0.0;  // bits/s; equals the bitrate of some ladder variant
};

// Measured aggregate video arrival rate at the ingress: offered (pre-queue)
// bytes, dropped or not.
struct RateMeasurement {
    std::uint64_t window_bytes = 0;   // bytes seen in the current window
    double measured_rate = 0.0;       // bits/s, recomputed every tick
    SimTime as_of;
    bool primed = false;              // EWMA seeded with the first sample
};

class RateMeter {
  public:
    explicit RateMeter(Estimator estimator, SimTime window, double alpha)
        : estimator_(estimator), window_(window), alpha_(alpha) {}

    void add_bytes(std::uint64_t bytes) { m_.window_bytes += bytes; }

    // Called once per MeasurementTick, every `window` of simulated time.
    void on_tick(SimTime now);

    const RateMeasurement& measurement() const { return m_; }

  private:
    Estimator estimator_;
    SimTime window_;
    double alpha_;
    RateMeasurement m_;
};

enum class Decision : std::uint8_t { Admit, Reject };

// The admission rule itself, a pure function of its arguments.
// CrossLayer: admit iff measured_rate + sla_rate <= capacity (inclusive).
// RaOnly:     admit iff active_count < session_cap.
Decision decide_admission(const SessionRequest& req, const RateMeasurement& m,
                          const AdmissionConfig& cfg, int active_count);

// Stateful wrapper that enforces one decision per request.
class AdmissionController {
  public:
    explicit AdmissionController(AdmissionConfig cfg) : cfg_(cfg) {}

    Decision decide(const SessionRequest& req, const RateMeasurement& m, int active_count);

    const AdmissionConfig& config() const { return cfg_; }

  private:
    AdmissionConfig cfg_;
    std::unordered_set<SessionId> decided_;
};

}  // namespace xlsim
