#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cpb/dynamics.hpp"
#include "cpb/mems.hpp"
#include "cpb/quantifiers.hpp"

using namespace cpb;

TEST_CASE("mems_state anchors") {
    const XState bell = mems_state({1.0});
    CHECK(bell.p11 == doctest::Approx(0.5));
    CHECK(bell.p44 == doctest::Approx(0.5));
    CHECK(bell.c14.real() == doctest::Approx(0.5));
    CHECK(bell.p33 == doctest::Approx(0.0));
    CHECK(concurrence_x(bell) == doctest::Approx(1.0));

    const XState zero = mems_state({0.0});
    CHECK(zero.p11 == doctest::Approx(1.0 / 3.0));
    CHECK(zero.p33 == doctest::Approx(1.0 / 3.0));
    CHECK(zero.p44 == doctest::Approx(1.0 / 3.0));
    CHECK(std::abs(zero.c14) == 0.0);

    const XState half = mems_state({0.5});
    CHECK(half.p11 == doctest::Approx(1.0 / 3.0));
    CHECK(half.c14.real() == doctest::Approx(0.25));

    CHECK_THROWS_AS(mems_state({1.2}), RangeError);
    CHECK_THROWS_AS(mems_state({-0.1}), RangeError);
}

TEST_CASE("g(gamma) branches meet at 2/3") {
    CHECK(mems_g(2.0 / 3.0) == doctest::Approx(1.0 / 3.0));
    CHECK(mems_g(2.0 / 3.0 - 1e-12) == doctest::Approx(1.0 / 3.0));
    CHECK(mems_g(0.9) == doctest::Approx(0.45));
}

TEST_CASE("mems_cpb anchors") {
    const MemsCpb at_threshold = mems_cpb({1.0 / std::sqrt(2.0)});
    CHECK(at_threshold.B == doctest::Approx(2.0).epsilon(1e-12));

    const MemsCpb g08 = mems_cpb({0.8});
    CHECK(g08.C == doctest::Approx(0.8));
    CHECK(g08.P == doctest::Approx(0.68));
    CHECK(g08.B == doctest::Approx(1.6 * std::sqrt(2.0)));
    CHECK(g08.R == doctest::Approx(-0.04));

    const MemsCpb g02 = mems_cpb({0.2});
    CHECK(g02.B * g02.B / 4.0 == doctest::Approx(1.0 / 9.0 + 0.04));
    CHECK(g02.R == doctest::Approx(-2.0 / 9.0 - 0.02));
    CHECK(g02.region == Region::R1);

    CHECK(mems_cpb({0.5}).region == Region::R3);
    CHECK(mems_cpb({2.0 / 3.0}).P == doctest::Approx(5.0 / 9.0));
    CHECK(purity_x(mems_state({2.0 / 3.0})) == doctest::Approx(5.0 / 9.0));
}

TEST_CASE("closed forms match the generic pipeline on a dense grid") {
    for (int k = 0; k <= 1000; ++k) {
        const MemsParam g{k / 1000.0};
        const MemsCpb closed = mems_cpb(g);
        const CPBTriplet t = cpb_triplet(mems_state(g));
        CHECK(std::abs(closed.C - t.C) <= 1e-10);
        CHECK(std::abs(closed.P - t.P) <= 1e-10);
        CHECK(std::abs(closed.B - t.B) <= 1e-10);
        CHECK(std::abs(closed.R - t.R) <= 1e-10);
        CHECK(closed.region == t.region);
        CHECK((t.region == Region::R1 || t.region == Region::R3));
        // Identity residual of the closed forms themselves.
        CHECK(std::abs(closed.B * closed.B / 4.0 - closed.P - closed.C * closed.C - closed.R) <=
              1e-12);
    }
}

TEST_CASE("violation region pins B to the lower bound 2 sqrt(2) C") {
    for (int k = 1; k <= 300; ++k) {
        const double gamma = 1.0 / std::sqrt(2.0) + (1.0 - 1.0 / std::sqrt(2.0)) * k / 300.0;
        const CPBTriplet t = cpb_triplet(mems_state({gamma}));
        CHECK(t.B > 2.0);
        CHECK(std::abs(t.B - 2.0 * std::sqrt(2.0) * t.C) <= 1e-10);
    }
    // No violation below the threshold.
    CHECK(cpb_triplet(mems_state({1.0 / std::sqrt(2.0) - 1e-9})).B < 2.0);
}

TEST_CASE("mems boundary curve") {
    CHECK(mems_boundary(0.0) == doctest::Approx(1.0 / 3.0));
    CHECK(mems_boundary(1.0) == doctest::Approx(1.0));
    CHECK(mems_boundary(2.0 / 3.0) == doctest::Approx(5.0 / 9.0));
    CHECK(mems_boundary(2.0 / 3.0 - 1e-12) == doctest::Approx(5.0 / 9.0));
    CHECK_THROWS_AS(mems_boundary(1.5), RangeError);
}

TEST_CASE("is_mems_trajectory accepts the symmetric-decay path above 2/3") {
    const SimParams p = SimParams::lossy(1e-3);
    std::vector<XState> states;
    for (double t = 0.0; t < 30.0; t += 0.25) {
        const XState s = state_plus(t, p);
        const double rpp = s.p22 + s.p33;
        if (rpp >= 2.0 / 3.0 + 1e-3) states.push_back(s);
    }
    REQUIRE(states.size() > 10);
    const auto report = is_mems_trajectory(states, 1e-9);
    CHECK(report.verdict);
    CHECK(report.counted == static_cast<int>(states.size()));
    CHECK(report.matched == report.counted);
    for (size_t i = 0; i < states.size(); ++i)
        CHECK(report.samples[i].gamma_est ==
              doctest::Approx(states[i].p22 + states[i].p33).epsilon(1e-12));
}

TEST_CASE("is_mems_trajectory rejects the lossless-cavity path and the ground state") {
    std::vector<XState> cavity;
    for (double t = 0.1; t <= 2.5; t += 0.1) cavity.push_back(perfect_cavity_psi(t, {1.0}));
    CHECK_FALSE(is_mems_trajectory(cavity, 1e-9).verdict);

    std::vector<XState> ground(1);
    ground[0].p44 = 1.0;
    const auto report = is_mems_trajectory(ground, 1e-9);
    CHECK_FALSE(report.verdict);
    CHECK(report.counted == 0);
    CHECK_FALSE(report.samples[0].matches); // the g-pattern is broken at gamma = 0
}
