#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "xlsim/admission.hpp"
#include "xlsim/config.hpp"
#include "xlsim/qoe.hpp"

namespace xlsim {

struct SessionOutcome {
    SessionRequest request;
    Decision decision = Decision::Reject;
    SimTime decided_at;
    double measured_rate_at_decision = 0.0;  // bits/s, for decision-log replay
};

// Everything one simulation produced: metrics, the per-request decision log,
// and diagnostics. Wall time never reaches the CSVs, which must be
// byte-identical across reruns.
struct RunReport {
    std::string run_id;  // "<mode>-<capacity kb/s>"
    Mode mode = Mode::CrossLayer;
    std::int64_t capacity = 0;
    ScenarioConfig config;  // effective config echo
    RunMetrics metrics;
    std::vector<SessionOutcome> decisions;  // in session-id order
    std::uint64_t events_dispatched = 0;
    std::uint64_t trace_digest = 0;
    double wall_ms = 0.0;
};

// Writes sessions.csv, summary.csv, one mos_by_session_<run_id>.dat per run,
// and an effective.conf echo. Fractions are printed as percentages with two
// decimals, rates as integer kb/s. Throws IoFailure on an unwritable
// destination.
void emit_reports(const std::vector<RunReport>& reports, const std::filesystem::path& out_dir);

}  // namespace xlsim
