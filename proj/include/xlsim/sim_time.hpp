#pragma once

#include <cmath>
#include <compare>
#include <cstdint>

namespace xlsim {

// Simulation time in integer microseconds. Event ordering and reports must
// not depend on float accumulation; int64 covers ~292k years, far beyond
// the 10x-run-duration headroom the engine requires.
struct SimTime {
    std::int64_t usec = 0;

    static constexpr SimTime zero() { return SimTime{0}; }
    static constexpr SimTime from_usec(std::int64_t us) { return SimTime{us}; }
    static SimTime from_seconds(double s) {
        return SimTime{static_cast<std::int64_t>(std::llround(s * 1e6))};
    }

    double seconds() const { return static_cast<double>(usec) * 1e-6; }

    constexpr auto operator<=>(const SimTime&) const = default;

    constexpr SimTime operator+(SimTime rhs) const { return SimTime{usec + rhs.usec}; }
    constexpr SimTime operator-(SimTime rhs) const { return SimTime{usec - rhs.usec}; }
    constexpr SimTime& operator+=(SimTime rhs) {
        usec += rhs.usec;
        return *this;
    }
};

}  // namespace xlsim
