#include "xlsim/admission.hpp"

#include <cassert>

namespace xlsim {

void RateMeter::on_tick(SimTime now) {
    const double window_s = window_.seconds();
    const double sample = static_cast<double>(m_.window_bytes) * 8.0 / window_s;

    switch (estimator_) {
        case Estimator::Instantaneous:
            m_.measured_rate = sample;
            break;
        case Estimator::WindowAverage:
            if (!m_.primed) {
                m_.measured_rate = sample;
                m_.primed = true;
            } else {
                m_.measured_rate = alpha_ * sample + (1.0 - alpha_) * m_.measured_rate;
            }
            break;
    }
    m_.window_bytes = 0;
    m_.as_of = now;
    assert(m_.measured_rate >= 0.0);
}

Decision decide_admission(const SessionRequest& req, const RateMeasurement& m,
                          const AdmissionConfig& cfg, int active_count) {
    if (cfg.mode == Mode::RaOnly) {
        return active_count < cfg.session_cap ? Decision::Admit : Decision::Reject;
    }
    return m.measured_rate + req.sla_rate <= static_cast<double>(cfg.capacity)
               ? Decision::Admit
               : Decision::Reject;
}

Decision AdmissionController::decide(const SessionRequest& req, const RateMeasurement& m,
                                     int active_count) {
    if (!decided_.insert(req.session_id).second) {
        throw DuplicateDecision("session " + std::to_string(req.session_id) +
                                " already decided");
    }
    return decide_admission(req, m, cfg_, active_count);
}

}  // namespace xlsim
