#pragma once

#include <stdexcept>
#include <string>

namespace xlsim {

// Error families map onto CLI exit codes: config 1, invariant 2, I/O 3.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvariantViolation : std::logic_error {
    using std::logic_error::logic_error;
};

struct IoFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidLadderBounds : ConfigError {
    using ConfigError::ConfigError;
};

struct SchedulingInPast : InvariantViolation {
    using InvariantViolation::InvariantViolation;
};

struct UnhandledEventKind : InvariantViolation {
    using InvariantViolation::InvariantViolation;
};

struct DuplicateDecision : InvariantViolation {
    using InvariantViolation::InvariantViolation;
};

struct IncompleteRun : InvariantViolation {
    using InvariantViolation::InvariantViolation;
};

}  // namespace xlsim
