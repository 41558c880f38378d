#pragma once

// Hand-built ground-truth fixtures, one per task kind, plus the seeded random
// instance generator the matching oracle corpus uses. Fixture events are
// spaced far apart (gaps > 16 s between anchor hulls) so no prediction can
// ever fall inside two events' reach, which keeps degradation monotonicity
// provable for any prediction set.

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "streameval/judge.hpp"
#include "streameval/rng.hpp"
#include "streameval/types.hpp"

namespace streameval::testsupport {

inline GroundTruthEvent event(std::string id, std::string answer, TimingSpec timing) {
    GroundTruthEvent e;
    e.event_id = std::move(id);
    e.answer = std::move(answer);
    e.timing = timing;
    return e;
}

inline GroundTruthSample fixture_sample(TaskKind task) {
    GroundTruthSample s;
    s.task = task;
    switch (task) {
        case TaskKind::EventUnderstanding:
            s.sample_id = "eu-1";
            s.video_duration = 60;
            s.query = "Describe the steps of setting up the tent as they happen.";
            s.query_time = 2;
            s.events = {
                event("eu-1-e1", "the person lays out the tent fabric",
                      TimingSpec::interval(6, 10)),
                event("eu-1-e2", "the person inserts the tent poles",
                      TimingSpec::interval(30, 34)),
            };
            return s;
        case TaskKind::ObjectUnderstanding:
            s.sample_id = "ou-1";
            s.video_duration = 60;
            s.query = "Report the state of the garage door whenever it changes.";
            s.query_time = 1;
            s.events = {
                event("ou-1-e1", "the garage door is now open", TimingSpec::timestamp(12)),
                event("ou-1-e2", "the garage door is now closed", TimingSpec::timestamp(40)),
            };
            return s;
        case TaskKind::AnomalyAlert:
            s.sample_id = "aa-1";
            s.video_duration = 50;
            s.query = "Warn me immediately if anything dangerous happens.";
            s.query_time = 0;
            s.events = {
                event("aa-1-e1", "a fire breaks out near the stove",
                      TimingSpec::timestamp(20)),
            };
            return s;
        case TaskKind::TemporalPerception:
            s.sample_id = "tp-1";
            s.video_duration = 70;
            s.query = "Tell me what happens after the cyclist leaves the plaza.";
            s.query_time = 3;
            s.events = {
                event("tp-1-e1", "the cyclist passes the fountain",
                      TimingSpec::interval(10, 14)),
                event("tp-1-e2", "the cyclist enters the park",
                      TimingSpec::interval(45, 50)),
            };
            return s;
        case TaskKind::TemporalGrounding:
            s.sample_id = "tg-1";
            s.video_duration = 60;
            s.query = "Give the start and end time of the dog crossing the street.";
            s.query_time = 2;
            s.events = {
                event("tg-1-e1", "12s-25s", TimingSpec::timestamp(25)),
            };
            return s;
        case TaskKind::GoalPlanning:
            s.sample_id = "gp-1";
            s.video_duration = 80;
            s.query = "Guide me through assembling the lamp.";
            s.query_time = 5;
            s.events = {
                event("gp-1-e1", "now attach the shade to the base",
                      TimingSpec::timestamp(20)),
                event("gp-1-e2", "next tighten the locking screws",
                      TimingSpec::timestamp(50)),
            };
            return s;
        case TaskKind::RiskForecasting:
            s.sample_id = "rf-1";
            s.video_duration = 40;
            s.query = "Warn me ahead of any hazard on my path.";
            s.query_time = 0;
            s.events = {
                event("rf-1-e1", "warning: low branch ahead, keep to the left",
                      TimingSpec::timestamp(15)),
            };
            return s;
    }
    throw std::runtime_error("unknown task");
}

inline std::vector<GroundTruthSample> all_fixture_samples() {
    std::vector<GroundTruthSample> out;
    for (TaskKind task : kAllTasks) out.push_back(fixture_sample(task));
    return out;
}

// ---- random matching instances ----

struct RandomInstance {
    GroundTruthSample sample;
    std::vector<TimedResponse> preds;
};

// N_gt, N_pred <= 6; anchors, windows and accuracies drawn from `rng`. The
// returned judge table gives every (prediction, answer) combination a fixed
// score from {0, 0.25, 0.5, 0.75, 1}.
inline RandomInstance random_instance(DetRng& rng, StubJudge& judge) {
    RandomInstance inst;
    auto& s = inst.sample;
    s.task = kAllTasks[rng.bounded(7)];
    s.sample_id = "rand";
    s.video_duration = 120;
    s.query = "q";
    s.query_time = rng.bounded(2) == 0 ? 0.0 : 10.0;

    const auto n_gt = 1 + rng.bounded(6);
    const bool interval_task = is_interval_task(s.task);
    std::vector<double> anchors;
    for (std::size_t i = 0; i < n_gt; ++i) {
        anchors.push_back(5.0 + rng.uniform() * 100.0);
    }
    std::sort(anchors.begin(), anchors.end());
    for (std::size_t i = 0; i < n_gt; ++i) {
        GroundTruthEvent e;
        e.event_id = "e" + std::to_string(i);
        if (s.task == TaskKind::TemporalGrounding) {
            const int a = static_cast<int>(rng.bounded(50));
            const int b = a + 1 + static_cast<int>(rng.bounded(20));
            e.answer = std::to_string(a) + "s-" + std::to_string(b) + "s";
        } else {
            e.answer = "a" + std::to_string(i);
        }
        if (interval_task) {
            const double len = rng.uniform() * 6.0;
            e.timing = TimingSpec::interval(anchors[i],
                                            std::min(anchors[i] + len, 120.0));
        } else {
            e.timing = TimingSpec::timestamp(anchors[i]);
        }
        if (rng.bounded(4) == 0) {
            e.tau_override = TauOverride{1.0 + rng.uniform() * 5.0,
                                         1.0 + rng.uniform() * 5.0};
        }
        if (rng.bounded(4) == 0) {
            const double lo = -(rng.uniform() * 6.0);
            e.window_override = WindowOverride{lo, lo + rng.uniform() * 9.0};
        }
        s.events.push_back(std::move(e));
    }

    const auto n_pred = rng.bounded(7);  // 0..6
    std::vector<double> times;
    for (std::size_t i = 0; i < n_pred; ++i) {
        // cluster most predictions near event anchors so matches actually occur
        if (rng.bounded(4) != 0) {
            const double anchor = anchors[rng.bounded(anchors.size())];
            times.push_back(std::max(0.0, anchor + (rng.uniform() - 0.5) * 16.0));
        } else {
            times.push_back(rng.uniform() * 120.0);
        }
    }
    std::sort(times.begin(), times.end());
    for (std::size_t i = 0; i < n_pred; ++i) {
        TimedResponse pred;
        pred.t = times[i];
        if (s.task == TaskKind::TemporalGrounding) {
            if (rng.bounded(10) == 0) {
                pred.text = "somewhere in the middle";  // unparseable on purpose
            } else {
                const int a = static_cast<int>(rng.bounded(50));
                const int b = a + 1 + static_cast<int>(rng.bounded(20));
                pred.text = std::to_string(a) + "s-" + std::to_string(b) + "s";
            }
        } else {
            pred.text = "p" + std::to_string(i);
        }
        inst.preds.push_back(std::move(pred));
    }

    static const double kScores[] = {0.0, 0.25, 0.5, 0.75, 1.0};
    if (s.task != TaskKind::TemporalGrounding) {
        for (const auto& pred : inst.preds) {
            for (const auto& e : s.events) {
                judge.set_answer_score(pred.text, e.answer, kScores[rng.bounded(5)]);
            }
        }
    }
    return inst;
}

}  // namespace streameval::testsupport
