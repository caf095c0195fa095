#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "xlsim/admission.hpp"
#include "xlsim/link.hpp"
#include "xlsim/media.hpp"
#include "xlsim/qoe.hpp"
#include "xlsim/source.hpp"

namespace xlsim {

struct LadderConfig {
    double r_min = 50'000.0;
    double r_max = 1'000'000.0;
    double psnr_min = 28.0;
    double psnr_max = 42.0;
};

// Everything one experiment needs. Defaults reproduce the reference
// scenario: 15 requests over 50 s against a 2/4/6/9 Mb/s bottleneck.
struct ScenarioConfig {
    Mode mode = Mode::CrossLayer;
    std::uint64_t seed = 1;
    double duration = 50.0;  // seconds
    int max_requests = 15;   // one request per second, random offset within it
    std::vector<std::int64_t> capacity_list{2'000'000, 4'000'000, 6'000'000, 9'000'000};

    LadderConfig ladder;
    GopSpec gop;
    LinkConfig link;  // capacity field is overwritten per run

    Estimator estimator = Estimator::Instantaneous;
    double window = 0.1;      // seconds
    double ewma_alpha = 0.3;
    int session_cap = 15;
    // Ladder index whose bitrate is the subscribed SLA rate; the admission
    // rule reserves it and new sessions start there.
    int sla_variant = 28;

    SourcePolicy source;
    QoeConfig qoe;

    // Re-execute every run and compare event digests before reporting.
    bool verify_determinism = true;

    // Throws ConfigError on any violated field invariant.
    void validate() const;

    AdmissionConfig admission_for(std::int64_t capacity, Mode run_mode) const;
};

std::string mode_name(Mode m);
std::optional<Mode> mode_from_name(const std::string& name);

// Flat `key = value` file with '#' comments and dotted keys for nesting.
// Unknown keys are errors so typos surface in `validate`.
ScenarioConfig load_config(const std::filesystem::path& path);
ScenarioConfig parse_config(const std::string& text);
std::string serialize_config(const ScenarioConfig& cfg);

}  // namespace xlsim
