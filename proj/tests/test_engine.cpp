#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <vector>

#include "xlsim/engine.hpp"
#include "xlsim/rng.hpp"

using namespace xlsim;

namespace {

struct Dispatch {
    std::int64_t at;
    std::uint64_t seq;
    SessionId tag;
};

std::vector<Dispatch> record_run(Engine& eng, SimTime end) {
    std::vector<Dispatch> trace;
    eng.on(EventKind::SessionRequest, [&](const SimEvent& ev) {
        trace.push_back({ev.fire_at.usec, ev.seq, std::get<SessionRequestEv>(ev.payload).session});
    });
    eng.run_until(end);
    return trace;
}

}  // namespace

TEST_CASE("schedule at the current instant is accepted with seq 0") {
    Engine eng;
    const EventHandle h = eng.schedule(SimTime::zero(), SessionRequestEv{7});
    CHECK(h == 0);
    const auto trace = record_run(eng, SimTime::from_seconds(1.0));
    REQUIRE(trace.size() == 1);
    CHECK(trace[0].tag == 7);
}

TEST_CASE("equal fire times pop in insertion order") {
    Engine eng;
    eng.schedule(SimTime::from_seconds(1.0), SessionRequestEv{1});
    eng.schedule(SimTime::from_seconds(1.0), SessionRequestEv{2});
    const auto trace = record_run(eng, SimTime::from_seconds(2.0));
    REQUIRE(trace.size() == 2);
    CHECK(trace[0].tag == 1);
    CHECK(trace[1].tag == 2);
    CHECK(trace[0].seq < trace[1].seq);
}

TEST_CASE("scheduling before the clock throws") {
    Engine eng;
    eng.on(EventKind::SessionRequest, [](const SimEvent&) {});
    eng.schedule(SimTime::from_seconds(1.0), SessionRequestEv{0});
    eng.run_until(SimTime::from_seconds(1.0));
    CHECK(eng.now() == SimTime::from_seconds(1.0));
    CHECK_THROWS_AS(eng.schedule(SimTime::from_seconds(0.5), SessionRequestEv{1}),
                    SchedulingInPast);
}

TEST_CASE("empty queue runs to the horizon with zero dispatches") {
    Engine eng;
    const SimTime end = SimTime::from_seconds(50.0);
    CHECK(eng.run_until(end) == end);
    CHECK(eng.dispatched() == 0);
}

TEST_CASE("dispatch order is (fire_at, seq)") {
    Engine eng;
    eng.schedule(SimTime::from_seconds(2.0), SessionRequestEv{20});
    eng.schedule(SimTime::from_seconds(1.0), SessionRequestEv{10});
    eng.schedule(SimTime::from_seconds(1.0), SessionRequestEv{11});
    const auto trace = record_run(eng, SimTime::from_seconds(50.0));
    REQUIRE(trace.size() == 3);
    CHECK(trace[0].tag == 10);
    CHECK(trace[1].tag == 11);
    CHECK(trace[2].tag == 20);
    CHECK(trace[0].seq < trace[1].seq);
}

TEST_CASE("events after the horizon stay pending") {
    Engine eng;
    eng.schedule(SimTime::from_seconds(3.0), SessionRequestEv{0});
    const auto trace = record_run(eng, SimTime::from_seconds(2.0));
    CHECK(trace.empty());
    CHECK(eng.now() == SimTime::from_seconds(2.0));
}

TEST_CASE("unhandled event kinds are rejected at dispatch") {
    Engine eng;
    eng.schedule(SimTime::zero(), RunEndEv{});
    CHECK_THROWS_AS(eng.run_until(SimTime::from_seconds(1.0)), UnhandledEventKind);
}

TEST_CASE("10k random events replay identically and in sorted order") {
    auto build = [] {
        Engine eng;
        RngStream rng(123456, 0);
        for (int i = 0; i < 10'000; ++i) {
            eng.schedule(SimTime::from_usec(static_cast<std::int64_t>(rng.next_below(5'000'000))),
                         SessionRequestEv{static_cast<SessionId>(i)});
        }
        return eng;
    };

    Engine first = build();
    Engine second = build();
    const auto a = record_run(first, SimTime::from_seconds(5.0));
    const auto b = record_run(second, SimTime::from_seconds(5.0));

    REQUIRE(a.size() == 10'000);
    REQUIRE(b.size() == a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].at == b[i].at);
        CHECK(a[i].seq == b[i].seq);
        CHECK(a[i].tag == b[i].tag);
    }

    // Sortedness: the dispatch sequence ordered by (fire_at, seq) is itself.
    const bool sorted = std::is_sorted(a.begin(), a.end(), [](const Dispatch& x, const Dispatch& y) {
        return std::make_pair(x.at, x.seq) < std::make_pair(y.at, y.seq);
    });
    CHECK(sorted);
}

TEST_CASE("no handler observes the clock decrease") {
    Engine eng;
    RngStream rng(99, 0);
    std::int64_t last_seen = -1;
    bool decreased = false;
    eng.on(EventKind::SessionRequest, [&](const SimEvent&) {
        if (eng.now().usec < last_seen) decreased = true;
        last_seen = eng.now().usec;
        // Handlers may schedule for the current instant or later.
        if (eng.dispatched() < 50) {
            eng.schedule(eng.now(), SessionRequestEv{0});
        }
    });
    for (int i = 0; i < 200; ++i) {
        eng.schedule(SimTime::from_usec(static_cast<std::int64_t>(rng.next_below(1'000'000))),
                     SessionRequestEv{0});
    }
    eng.run_until(SimTime::from_seconds(2.0));
    CHECK_FALSE(decreased);
}
