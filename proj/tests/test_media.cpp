#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>

#include "xlsim/media.hpp"

using namespace xlsim;

TEST_CASE("ladder endpoints are anchored exactly") {
    const auto ladder = VariantLadder::build(50'000, 1'000'000, 28.0, 42.0);
    REQUIRE(ladder.size() == 30);
    CHECK(ladder.at(0).bitrate == 50'000.0);
    CHECK(ladder.at(0).ref_psnr == 28.0);
    CHECK(ladder.at(29).bitrate == 1'000'000.0);
    CHECK(ladder.at(29).ref_psnr == 42.0);
}

TEST_CASE("geometric spacing matches the independently computed value") {
    const auto ladder = VariantLadder::build(50'000, 1'000'000, 28.0, 42.0);
    // 50000 * 20^(15/29), evaluated with 30-digit arithmetic: 235459.682364
    CHECK(ladder.at(15).bitrate == doctest::Approx(235459.682364).epsilon(1e-9));
    // PSNR is linear along the geometric ladder: 28 + 14 * 15 / 29
    CHECK(ladder.at(15).ref_psnr == doctest::Approx(35.2413793103).epsilon(1e-9));
    // And a second spot check: 50000 * 20^(7/29) = 103041.394475
    CHECK(ladder.at(7).bitrate == doctest::Approx(103041.394475).epsilon(1e-9));
}

TEST_CASE("ladder is strictly monotone in bitrate and PSNR") {
    const auto ladder = VariantLadder::build(120'000, 3'400'000, 25.0, 45.5);
    for (int i = 1; i < ladder.size(); ++i) {
        CHECK(ladder.at(i).bitrate > ladder.at(i - 1).bitrate);
        CHECK(ladder.at(i).ref_psnr > ladder.at(i - 1).ref_psnr);
        CHECK(ladder.at(i).quality_index == ladder.at(i - 1).quality_index + 1);
    }
}

TEST_CASE("degenerate ladder bounds are rejected") {
    CHECK_THROWS_AS(VariantLadder::build(100'000, 100'000, 28, 42), InvalidLadderBounds);
    CHECK_THROWS_AS(VariantLadder::build(0, 100'000, 28, 42), InvalidLadderBounds);
    CHECK_THROWS_AS(VariantLadder::build(50'000, 100'000, 42, 42), InvalidLadderBounds);
}

TEST_CASE("plan_gop splits 400 kb/s into 50000 bytes of 2-packet frames") {
    RateVariant v;
    v.index = 0;
    v.bitrate = 400'000;
    v.ref_psnr = 30.0;
    const GopSpec spec{30, 30, 1000};

    const auto frames = plan_gop(v, spec);
    REQUIRE(frames.size() == 30);

    long long total = 0;
    int packets = 0;
    for (const auto& f : frames) {
        total += f.size;
        packets += f.packet_count;
        CHECK((f.size == 1666 || f.size == 1667));
        CHECK(f.packet_count == 2);
        // Packet payloads cover the frame; the last packet may be short.
        CHECK(packet_size(f, spec.payload_bytes, 0) == 1000);
        CHECK(packet_size(f, spec.payload_bytes, 1) == f.size - 1000);
    }
    CHECK(total == 50'000);  // 400000 * 1s / 8
    CHECK(packets == 60);
    // Remainder bytes go one each to the first frames.
    CHECK(frames[0].size == 1667);
    CHECK(frames[29].size == 1666);
}

TEST_CASE("a payload at least as large as the frame gives one packet") {
    RateVariant v;
    v.bitrate = 240'000;  // 1000 B frames at 30 fps
    const GopSpec spec{30, 30, 1500};
    const auto frames = plan_gop(v, spec);
    for (const auto& f : frames) {
        CHECK(f.packet_count == 1);
        CHECK(packet_size(f, spec.payload_bytes, 0) == f.size);
    }
}

TEST_CASE("plan_gop conserves bytes and is pure") {
    const auto ladder = VariantLadder::build(50'000, 1'000'000, 28, 42);
    const GopSpec spec{30, 30, 1000};
    for (int i = 0; i < ladder.size(); ++i) {
        const auto a = plan_gop(ladder.at(i), spec);
        const auto b = plan_gop(ladder.at(i), spec);
        long long total = 0;
        for (const auto& f : a) total += f.size;
        const long long expected =
            std::llround(ladder.at(i).bitrate * (spec.gop_len / static_cast<double>(spec.fps)) / 8.0);
        CHECK(total == expected);
        REQUIRE(a.size() == b.size());
        for (std::size_t k = 0; k < a.size(); ++k) {
            CHECK(a[k].size == b[k].size);
            CHECK(a[k].packet_count == b[k].packet_count);
        }
    }
}
