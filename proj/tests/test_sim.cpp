#include <doctest.h>

#include "streameval/metric.hpp"
#include "streameval/sim.hpp"
#include "support/fixtures.hpp"

using namespace streameval;
using namespace streameval::testsupport;

TEST_CASE("oracle trajectories fill every integer second with a step") {
    const auto sample = fixture_sample(TaskKind::AnomalyAlert);
    const auto traj = simulate(sample, PolicySpec::oracle());
    // 0..50 inclusive, one response replaces the silence at t=20
    CHECK(traj.steps.size() == 51);
    int responses_seen = 0;
    for (const auto& step : traj.steps) {
        if (step.token == StepToken::Response) ++responses_seen;
    }
    CHECK(responses_seen == 1);
}

TEST_CASE("delay beyond the window span zeroes the score") {
    StubJudge judge;
    const auto sample = fixture_sample(TaskKind::ObjectUnderstanding);
    const auto traj = simulate(sample, PolicySpec::delayed(25.0));
    CHECK(score_sample(sample, traj, judge).f1 == 0.0);
}

TEST_CASE("dropout 1.0 removes every response") {
    const auto sample = fixture_sample(TaskKind::GoalPlanning);
    const auto traj = simulate(sample, PolicySpec::dropout(1.0, 3));
    CHECK(responses(traj).empty());
}

TEST_CASE("dropout 0.0 removes nothing") {
    const auto sample = fixture_sample(TaskKind::GoalPlanning);
    const auto traj = simulate(sample, PolicySpec::dropout(0.0, 3));
    CHECK(responses(traj).size() == sample.events.size());
}

TEST_CASE("seeded policies reproduce bit-for-bit") {
    const auto sample = fixture_sample(TaskKind::EventUnderstanding);
    const auto policy = PolicySpec::composite({
        PolicySpec::jittered(2.0, 42),
        PolicySpec::chatty(3.0, 43),
        PolicySpec::dropout(0.4, 44),
    });
    const auto a = simulate(sample, policy);
    const auto b = simulate(sample, policy);
    CHECK(a == b);
    const auto c = simulate(sample, PolicySpec::jittered(2.0, 42));
    const auto d = simulate(sample, PolicySpec::jittered(2.0, 99));
    CHECK(c != d);
}

TEST_CASE("jitter clips into [query_time, video_duration]") {
    const auto sample = fixture_sample(TaskKind::TemporalPerception);
    const auto traj = simulate(sample, PolicySpec::jittered(50.0, 8));
    for (const auto& r : responses(traj)) {
        CHECK(r.t >= sample.query_time);
        CHECK(r.t <= sample.video_duration + 1e-5);  // separation nudge allowance
    }
}

TEST_CASE("chatty adds placeholder responses that the stub scores zero") {
    StubJudge judge;
    const auto sample = fixture_sample(TaskKind::ObjectUnderstanding);
    const auto clean = simulate(sample, PolicySpec::oracle());
    const auto noisy = simulate(sample, PolicySpec::chatty(4.0, 5));
    CHECK(responses(noisy).size() > responses(clean).size());
    const auto base = score_sample(sample, clean, judge);
    const auto diluted = score_sample(sample, noisy, judge);
    CHECK(diluted.f1 < base.f1);
    CHECK(diluted.recall == doctest::Approx(base.recall));  // originals still match
}

TEST_CASE("metric degrades monotonically over a delay grid") {
    StubJudge judge;
    for (TaskKind task : kAllTasks) {
        const auto sample = fixture_sample(task);
        double prev = 2.0;
        for (double delta : {0.0, 1.0, 2.0, 4.0, 8.0}) {
            const auto traj = simulate(sample, PolicySpec::delayed(delta));
            const double f1 = score_sample(sample, traj, judge).f1;
            INFO("task ", to_string(task), " delta ", delta);
            CHECK(f1 <= prev + 1e-12);
            prev = f1;
        }
    }
}

TEST_CASE("offline transcript parsing maps Wait to silence") {
    const std::vector<TimedResponse> frames = {
        {1.0, "Wait"}, {2.0, "Wait"}, {3.0, "a red car"}};
    const auto traj = parse_offline_transcript("s", frames);
    REQUIRE(traj.steps.size() == 3);
    CHECK(traj.steps[0].token == StepToken::Silence);
    CHECK(traj.steps[1].token == StepToken::Silence);
    CHECK(traj.steps[2].token == StepToken::Response);
    CHECK(*traj.steps[2].text == "a red car");
    CHECK(*traj.steps[2].raw == "a red car");
}

TEST_CASE("offline transcript: all Wait means all silence") {
    const std::vector<TimedResponse> frames = {{1.0, "Wait"}, {2.0, "wait"}};
    const auto traj = parse_offline_transcript("s", frames);
    for (const auto& step : traj.steps) CHECK(step.token == StepToken::Silence);
}

TEST_CASE("offline transcript normalizes padded lowercase wait") {
    const auto traj = parse_offline_transcript("s", {{1.0, " wait "}});
    REQUIRE(traj.steps.size() == 1);
    CHECK(traj.steps[0].token == StepToken::Silence);
}

TEST_CASE("chatty placeholders never collide with fixture answers") {
    for (const auto& text : chatty_placeholder_texts()) {
        for (const auto& sample : all_fixture_samples()) {
            for (const auto& event : sample.events) {
                CHECK(StubJudge::normalize(text) != StubJudge::normalize(event.answer));
            }
        }
    }
}
