#include <doctest.h>

#include "streameval/errors.hpp"
#include "streameval/types.hpp"

using namespace streameval;

TEST_CASE("responses filters to nonempty response steps in order") {
    Trajectory traj;
    traj.sample_id = "s";
    traj.steps = {
        {0.0, StepToken::Silence, std::nullopt, std::nullopt},
        {1.0, StepToken::Response, "a", std::nullopt},
        {2.0, StepToken::Silence, std::nullopt, std::nullopt},
    };
    const auto out = responses(traj);
    REQUIRE(out.size() == 1);
    CHECK(out[0].t == 1.0);
    CHECK(out[0].text == "a");
}

TEST_CASE("all-silence trajectory has no responses") {
    Trajectory traj;
    traj.sample_id = "s";
    traj.steps = {{0.0, StepToken::Silence, std::nullopt, std::nullopt},
                  {1.0, StepToken::Silence, std::nullopt, std::nullopt}};
    CHECK(responses(traj).empty());
}

TEST_CASE("empty-text response counts toward K but not N_pred") {
    Trajectory traj;
    traj.sample_id = "s";
    traj.steps = {{0.0, StepToken::Response, "", std::nullopt},
                  {1.0, StepToken::Response, "x", std::nullopt}};
    CHECK(traj.length() == 2);
    const auto out = responses(traj);
    REQUIRE(out.size() == 1);
    CHECK(out[0].text == "x");
    CHECK(out.size() <= traj.length());
}

TEST_CASE("eligible_responses drops pre-query responses") {
    Trajectory traj;
    traj.sample_id = "s";
    traj.steps = {{1.0, StepToken::Response, "early", std::nullopt},
                  {5.0, StepToken::Response, "late", std::nullopt}};
    const auto out = eligible_responses(traj, 3.0);
    REQUIRE(out.size() == 1);
    CHECK(out[0].text == "late");
}

TEST_CASE("trajectory step times must strictly increase") {
    Trajectory traj;
    traj.sample_id = "s";
    traj.steps = {{1.0, StepToken::Silence, std::nullopt, std::nullopt},
                  {1.0, StepToken::Silence, std::nullopt, std::nullopt}};
    CHECK_THROWS_AS(validate(traj), InputError);
}

TEST_CASE("sample validation rejects inverted intervals and empty events") {
    GroundTruthSample s;
    s.sample_id = "s";
    s.task = TaskKind::EventUnderstanding;
    s.video_duration = 30;
    s.query_time = 0;
    CHECK_THROWS_AS(validate(s), InputError);

    GroundTruthEvent e;
    e.event_id = "e";
    e.answer = "a";
    e.timing = TimingSpec{TimingSpec::Kind::Interval, 9.0, 5.0};
    s.events = {e};
    CHECK_THROWS_AS(validate(s), InputError);

    s.events[0].timing = TimingSpec::interval(5, 9);
    CHECK_NOTHROW(validate(s));

    s.events[0].timing = TimingSpec::interval(5, 31);  // beyond video end
    CHECK_THROWS_AS(validate(s), InputError);
}

TEST_CASE("PairScore::make derives joint and additive scores") {
    const auto p = PairScore::make("e", 0, 0.5, 0.8);
    CHECK(p.s_joint == doctest::Approx(0.4));
    CHECK(p.s_additive == doctest::Approx(1.3));
}

TEST_CASE("task names round-trip including short codes") {
    for (TaskKind task : kAllTasks) {
        CHECK(task_from_string(to_string(task)) == task);
    }
    CHECK(task_from_string("EU") == TaskKind::EventUnderstanding);
    CHECK(task_from_string("RF") == TaskKind::RiskForecasting);
    CHECK_THROWS_AS(task_from_string("nope"), InputError);
}
