#include <doctest.h>

#include "streameval/errors.hpp"
#include "streameval/metric.hpp"
#include "streameval/sim.hpp"
#include "support/fixtures.hpp"

using namespace streameval;
using namespace streameval::testsupport;

TEST_CASE("oracle trajectories score perfect F1 with the stub judge") {
    StubJudge judge;
    for (TaskKind task : kAllTasks) {
        const auto sample = fixture_sample(task);
        const auto traj = simulate(sample, PolicySpec::oracle());
        const auto score = score_sample(sample, traj, judge);
        INFO("task ", to_string(task));
        CHECK(score.precision == 1.0);
        CHECK(score.recall == 1.0);
        CHECK(score.f1 == 1.0);
        CHECK(score.mean_time == 1.0);
        CHECK(score.mean_acc == 1.0);
    }
}

TEST_CASE("no responses means F1 = 0") {
    StubJudge judge;
    const auto sample = fixture_sample(TaskKind::AnomalyAlert);
    const auto traj = simulate(sample, PolicySpec::dropout(1.0, 1));
    const auto score = score_sample(sample, traj, judge);
    CHECK(score.n_pred == 0);
    CHECK(score.precision == 0.0);
    CHECK(score.recall == 0.0);
    CHECK(score.f1 == 0.0);
    CHECK(score.mean_time == 0.0);
}

TEST_CASE("hand-worked example: joints {0.8, 0.7}, 3 preds, 2 events") {
    // two claim-separated events, a third prediction that matches nothing
    StubJudge judge;
    judge.set_answer_score("p0", "a0", 0.8);
    judge.set_answer_score("p1", "a1", 0.7);
    GroundTruthSample s;
    s.sample_id = "s";
    s.task = TaskKind::ObjectUnderstanding;
    s.video_duration = 120;
    s.query = "q";
    s.query_time = 0;
    s.events = {event("e0", "a0", TimingSpec::timestamp(10)),
                event("e1", "a1", TimingSpec::timestamp(40))};
    Trajectory traj;
    traj.sample_id = "s";
    traj.steps = {{10.0, StepToken::Response, "p0", std::nullopt},
                  {40.0, StepToken::Response, "p1", std::nullopt},
                  {80.0, StepToken::Response, "stray", std::nullopt}};
    const auto score = score_sample(s, traj, judge);
    CHECK(score.n_pred == 3);
    CHECK(score.n_gt == 2);
    CHECK(score.precision == doctest::Approx(0.5));    // 1.5 / 3
    CHECK(score.recall == doctest::Approx(0.75));      // 1.5 / 2
    CHECK(score.f1 == doctest::Approx(0.6));
}

TEST_CASE("sample id mismatch is an input error") {
    StubJudge judge;
    const auto sample = fixture_sample(TaskKind::AnomalyAlert);
    Trajectory traj;
    traj.sample_id = "other";
    CHECK_THROWS_AS(score_sample(sample, traj, judge), InputError);
}

TEST_CASE("metric ignores interleaved silence steps") {
    StubJudge judge;
    const auto sample = fixture_sample(TaskKind::ObjectUnderstanding);
    auto traj = simulate(sample, PolicySpec::oracle());
    Trajectory sparse;
    sparse.sample_id = traj.sample_id;
    for (const auto& step : traj.steps) {
        if (step.token == StepToken::Response) sparse.steps.push_back(step);
    }
    const auto a = score_sample(sample, traj, judge);
    const auto b = score_sample(sample, sparse, judge);
    CHECK(a.precision == b.precision);
    CHECK(a.recall == b.recall);
    CHECK(a.f1 == b.f1);
}

TEST_CASE("spurious unmatched responses strictly dilute precision, never raise F1") {
    StubJudge judge;
    const auto sample = fixture_sample(TaskKind::ObjectUnderstanding);
    const auto clean = simulate(sample, PolicySpec::oracle());
    const auto base = score_sample(sample, clean, judge);

    auto noisy = clean;
    noisy.steps.push_back({60.5, StepToken::Response, "noise text", std::nullopt});
    const auto scored = score_sample(sample, noisy, judge);
    CHECK(scored.precision < base.precision);
    CHECK(scored.f1 <= base.f1);
}

TEST_CASE("removing a matched response never increases recall") {
    StubJudge judge;
    const auto sample = fixture_sample(TaskKind::ObjectUnderstanding);
    const auto full = simulate(sample, PolicySpec::oracle());
    const auto base = score_sample(sample, full, judge);

    Trajectory truncated;
    truncated.sample_id = full.sample_id;
    bool dropped = false;
    for (const auto& step : full.steps) {
        if (!dropped && step.token == StepToken::Response) {
            dropped = true;
            continue;
        }
        truncated.steps.push_back(step);
    }
    const auto scored = score_sample(sample, truncated, judge);
    CHECK(scored.recall <= base.recall);
}

TEST_CASE("aggregate: single task collapses both averages") {
    std::vector<SampleScore> scores(1);
    scores[0].sample_id = "s";
    scores[0].task = TaskKind::AnomalyAlert;
    scores[0].f1 = 0.42;
    const auto report = aggregate(scores);
    CHECK(report.avg_f1 == doctest::Approx(0.42));
    CHECK(report.weighted_avg_f1 == doctest::Approx(0.42));
}

TEST_CASE("aggregate: two tasks with F1 {0.2, 0.6} and counts {1, 3}") {
    std::vector<SampleScore> scores;
    SampleScore a;
    a.task = TaskKind::AnomalyAlert;
    a.f1 = 0.2;
    scores.push_back(a);
    for (int i = 0; i < 3; ++i) {
        SampleScore b;
        b.task = TaskKind::GoalPlanning;
        b.f1 = 0.6;
        scores.push_back(b);
    }
    const auto report = aggregate(scores);
    CHECK(report.avg_f1 == doctest::Approx(0.4));
    CHECK(report.weighted_avg_f1 == doctest::Approx(0.5));
    CHECK(report.per_task.at(TaskKind::AnomalyAlert).qa_count == 1);
    CHECK(report.per_task.at(TaskKind::GoalPlanning).qa_count == 3);
    // empty task buckets are simply absent
    CHECK(report.per_task.size() == 2);
}

TEST_CASE("aggregate of nothing is an input error") {
    CHECK_THROWS_AS(aggregate({}), InputError);
}

TEST_CASE("config-level tolerance overrides steer eligibility") {
    StubJudge judge;
    const auto sample = fixture_sample(TaskKind::AnomalyAlert);  // onset 20, window [0,+5]
    Trajectory traj;
    traj.sample_id = sample.sample_id;
    traj.steps = {{27.0, StepToken::Response, sample.events[0].answer, std::nullopt}};

    CHECK(score_sample(sample, traj, judge).f1 == 0.0);  // outside default window

    ToleranceMap overrides;
    overrides[TaskKind::AnomalyAlert] = ToleranceSpec::symmetric(0.0, 10.0, 14.0);
    const auto widened = score_sample(sample, traj, judge, &overrides);
    CHECK(widened.f1 == doctest::Approx(0.5));  // 1 - 7/14 time score, exact answer
}

TEST_CASE("F1 is zero exactly when no pair carries a positive joint score") {
    StubJudge judge;  // unknown text scores 0
    const auto sample = fixture_sample(TaskKind::AnomalyAlert);
    Trajectory traj;
    traj.sample_id = sample.sample_id;
    traj.steps = {{20.0, StepToken::Response, "an entirely wrong claim", std::nullopt}};
    const auto score = score_sample(sample, traj, judge);
    REQUIRE(score.pairs.pairs.size() == 1);  // matched, but worthless
    CHECK(score.pairs.pairs[0].s_joint == 0.0);
    CHECK(score.f1 == 0.0);
}
