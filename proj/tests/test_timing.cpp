#include <doctest.h>

#include "streameval/errors.hpp"
#include "streameval/timing.hpp"

using namespace streameval;

TEST_CASE("zero deviation scores 1 for any tau") {
    const auto t = TimingSpec::timestamp(10);
    CHECK(time_score(10.0, t, ToleranceSpec::symmetric(-3, 3, 4)) == 1.0);
    CHECK(time_score(10.0, t, ToleranceSpec::symmetric(-3, 3, 0.5)) == 1.0);
}

TEST_CASE("linear decay: half tau gives half credit") {
    const auto t = TimingSpec::timestamp(10);
    const auto spec = ToleranceSpec::symmetric(-3, 3, 4);
    CHECK(time_score(12.0, t, spec) == doctest::Approx(0.5));
    CHECK(time_score(8.0, t, spec) == doctest::Approx(0.5));
}

TEST_CASE("anomaly alert at onset+5 with tau 6") {
    const auto spec = default_tolerance(TaskKind::AnomalyAlert);
    CHECK(spec.tau_late == 6.0);
    CHECK(time_score(25.0, TimingSpec::timestamp(20), spec) ==
          doctest::Approx(1.0 - 5.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("risk forecasting asymmetry: 1s early and 2s late both score 0.5") {
    const auto spec = default_tolerance(TaskKind::RiskForecasting);
    CHECK(spec.tau_early == 2.0);
    CHECK(spec.tau_late == 4.0);
    const auto warning = TimingSpec::timestamp(15);
    CHECK(time_score(14.0, warning, spec) == doctest::Approx(0.5));
    CHECK(time_score(17.0, warning, spec) == doctest::Approx(0.5));
}

TEST_CASE("interval timings score 1 inside and decay from the boundary") {
    const auto interval = TimingSpec::interval(5, 9);
    const auto spec = default_tolerance(TaskKind::EventUnderstanding);
    CHECK(time_score(5.0, interval, spec) == 1.0);
    CHECK(time_score(7.3, interval, spec) == 1.0);
    CHECK(time_score(9.0, interval, spec) == 1.0);
    CHECK(time_score(11.0, interval, spec) == doctest::Approx(0.5));
    CHECK(time_score(3.0, interval, spec) == doctest::Approx(0.5));
}

TEST_CASE("in_window honors the task windows, boundaries inclusive") {
    // object understanding: [-3, +3] about the transition at 10
    const auto ou = default_tolerance(TaskKind::ObjectUnderstanding);
    CHECK(in_window(12.0, TimingSpec::timestamp(10), ou));
    CHECK(in_window(7.0, TimingSpec::timestamp(10), ou));
    CHECK(in_window(13.0, TimingSpec::timestamp(10), ou));
    CHECK_FALSE(in_window(13.5, TimingSpec::timestamp(10), ou));

    // goal planning: [-3, 0] about completion at 20; post-completion ineligible
    const auto gp = default_tolerance(TaskKind::GoalPlanning);
    CHECK(in_window(20.0, TimingSpec::timestamp(20), gp));
    CHECK(in_window(17.0, TimingSpec::timestamp(20), gp));
    CHECK_FALSE(in_window(21.0, TimingSpec::timestamp(20), gp));

    // event understanding: interval [5,9] plus 3s tail; boundary inclusive
    const auto eu = default_tolerance(TaskKind::EventUnderstanding);
    CHECK(in_window(9.0, TimingSpec::interval(5, 9), eu));
    CHECK(in_window(12.0, TimingSpec::interval(5, 9), eu));
    CHECK(in_window(5.0, TimingSpec::interval(5, 9), eu));
    CHECK_FALSE(in_window(4.9, TimingSpec::interval(5, 9), eu));
}

TEST_CASE("score can be positive outside the eligibility window") {
    // event understanding at end+3.5: outside [start, end+3] but tau=4 decay
    // still gives 0.125
    const auto eu = default_tolerance(TaskKind::EventUnderstanding);
    const auto interval = TimingSpec::interval(5, 9);
    CHECK_FALSE(in_window(12.5, interval, eu));
    CHECK(time_score(12.5, interval, eu) == doctest::Approx(0.125));
}

TEST_CASE("non-positive tau is a configuration error") {
    CHECK_THROWS_AS(time_score(1.0, TimingSpec::timestamp(0), ToleranceSpec{0, 0, 0, 0}),
                    ConfigError);
}

TEST_CASE("time_score is non-increasing in deviation and hits 0 at tau") {
    const auto spec = ToleranceSpec::symmetric(-5, 5, 4);
    const auto timing = TimingSpec::timestamp(50);
    double prev = 2.0;
    for (double dt = 0.0; dt <= 8.0; dt += 0.25) {
        const double score = time_score(50.0 + dt, timing, spec);
        CHECK(score <= prev);
        if (dt <= 4.0) {
            CHECK(score == doctest::Approx(1.0 - dt / 4.0).epsilon(1e-12));
        } else {
            CHECK(score == 0.0);
        }
        prev = score;
    }
}

TEST_CASE("event overrides replace window and tau") {
    GroundTruthEvent e;
    e.event_id = "e";
    e.answer = "a";
    e.timing = TimingSpec::timestamp(10);
    e.window_override = WindowOverride{-1.0, 1.0};
    e.tau_override = TauOverride{2.0, 8.0};
    const auto spec = effective_tolerance(TaskKind::ObjectUnderstanding, e);
    CHECK(spec.window_lo == -1.0);
    CHECK(spec.window_hi == 1.0);
    CHECK(spec.tau_early == 2.0);
    CHECK(spec.tau_late == 8.0);
}
