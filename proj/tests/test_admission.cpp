#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "xlsim/admission.hpp"
#include "xlsim/rng.hpp"

using namespace xlsim;

namespace {

AdmissionConfig cross_layer(std::int64_t capacity) {
    AdmissionConfig cfg;
    cfg.mode = Mode::CrossLayer;
    cfg.capacity = capacity;
    return cfg;
}

SessionRequest request(double sla) {
    SessionRequest req;
    req.session_id = 0;
    req.sla_rate = sla;
    return req;
}

RateMeasurement measured(double rate) {
    RateMeasurement m;
    m.measured_rate = rate;
    return m;
}

}  // namespace

TEST_CASE("instantaneous estimator: 25000 B in a 100 ms window is 2 Mb/s") {
    RateMeter meter(Estimator::Instantaneous, SimTime::from_usec(100'000), 0.3);
    meter.add_bytes(25'000);
    meter.on_tick(SimTime::from_usec(100'000));
    CHECK(meter.measurement().measured_rate == doctest::Approx(2'000'000.0));
    // The window resets: an idle window measures zero.
    meter.on_tick(SimTime::from_usec(200'000));
    CHECK(meter.measurement().measured_rate == 0.0);
}

TEST_CASE("window-average estimator folds the EWMA from the first sample") {
    // Hand-folded: seeded with 2 Mb/s, then 0.5*0 + 0.5*2 = 1 Mb/s.
    RateMeter meter(Estimator::WindowAverage, SimTime::from_usec(100'000), 0.5);
    meter.add_bytes(25'000);
    meter.on_tick(SimTime::from_usec(100'000));
    CHECK(meter.measurement().measured_rate == doctest::Approx(2'000'000.0));
    meter.on_tick(SimTime::from_usec(200'000));
    CHECK(meter.measurement().measured_rate == doctest::Approx(1'000'000.0));
}

TEST_CASE("cross-layer admission rule arithmetic") {
    CHECK(decide_admission(request(400'000), measured(1'500'000), cross_layer(2'000'000), 0) ==
          Decision::Admit);  // 1.9 <= 2.0
    CHECK(decide_admission(request(400'000), measured(1'600'000), cross_layer(2'000'000), 0) ==
          Decision::Admit);  // equality is inclusive
    CHECK(decide_admission(request(400'000), measured(1'800'000), cross_layer(2'000'000), 0) ==
          Decision::Reject);  // 2.2 > 2.0
}

TEST_CASE("ra-only admits below the session cap and rejects at it") {
    AdmissionConfig cfg;
    cfg.mode = Mode::RaOnly;
    cfg.session_cap = 15;
    cfg.capacity = 2'000'000;
    CHECK(decide_admission(request(400'000), measured(99e6), cfg, 14) == Decision::Admit);
    CHECK(decide_admission(request(400'000), measured(0), cfg, 15) == Decision::Reject);
}

TEST_CASE("a request is decided at most once") {
    AdmissionController ctrl(cross_layer(2'000'000));
    SessionRequest req = request(100'000);
    req.session_id = 4;
    ctrl.decide(req, measured(0), 0);
    CHECK_THROWS_AS(ctrl.decide(req, measured(0), 0), DuplicateDecision);
}

TEST_CASE("10k fuzzed decisions agree with the inequality oracle") {
    RngStream rng(77, 5);
    int equality_cases = 0;
    for (int i = 0; i < 10'000; ++i) {
        const double sla = static_cast<double>(rng.next_below(2'000'000));
        double rate = static_cast<double>(rng.next_below(10'000'000));
        const std::int64_t capacity = 1 + static_cast<std::int64_t>(rng.next_below(10'000'000));
        // Force exact boundary hits on a slice of the cases.
        if (i % 10 == 0) {
            rate = static_cast<double>(capacity) - sla;
            if (rate < 0) rate = 0;
        }
        if (rate + sla == static_cast<double>(capacity)) ++equality_cases;

        const Decision got =
            decide_admission(request(sla), measured(rate), cross_layer(capacity), 0);
        const Decision want =
            rate + sla <= static_cast<double>(capacity) ? Decision::Admit : Decision::Reject;
        REQUIRE(got == want);
    }
    CHECK(equality_cases > 500);  // the boundary slice really exercises equality
}
