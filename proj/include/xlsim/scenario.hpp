#pragma once

#include <vector>

#include "xlsim/config.hpp"
#include "xlsim/report.hpp"
#include "xlsim/rng.hpp"

namespace xlsim {

// One session request per second for max_requests seconds, the k-th at a
// uniform-random microsecond offset inside [k, k+1). Deterministic given the
// arrival stream.
std::vector<SessionRequest> generate_arrivals(const ScenarioConfig& cfg, double sla_rate,
                                              RngStream& arrival);

// One simulation: a single (capacity, mode) pair under the scenario config.
RunReport run_single(const ScenarioConfig& cfg, std::int64_t capacity, Mode mode);

// The config's capacity sweep in its configured mode. When
// cfg.verify_determinism is set, every run is executed twice and the event
// digests must agree.
std::vector<RunReport> run_scenario(const ScenarioConfig& cfg);

// Full experiment: capacity sweep x both architectures.
std::vector<RunReport> run_sweep(const ScenarioConfig& cfg);

}  // namespace xlsim
