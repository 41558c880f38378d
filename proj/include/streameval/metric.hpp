#pragma once

#include <map>
#include <vector>

#include "streameval/matching.hpp"
#include "streameval/types.hpp"

namespace streameval {

struct SampleScore {
    std::string sample_id;
    TaskKind task = TaskKind::EventUnderstanding;
    double precision = 0.0;  // sum of joint scores / N_pred, 0 when N_pred = 0
    double recall = 0.0;     // sum of joint scores / N_gt
    double f1 = 0.0;         // 2PR/(P+R), 0 when P+R = 0
    double mean_time = 0.0;  // over matched pairs, 0 when none
    double mean_acc = 0.0;
    int n_pred = 0;
    int n_gt = 0;
    MatchResult pairs;
};

struct TaskAggregate {
    double time = 0.0;
    double acc = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    int qa_count = 0;
};

struct SuiteReport {
    std::map<TaskKind, TaskAggregate> per_task;
    double avg_f1 = 0.0;           // unweighted mean of per-task F1
    double weighted_avg_f1 = 0.0;  // QA-count-weighted mean of per-task F1
};

// Benchmark scoring of one trajectory: prediction-first matching, then
// score-weighted precision/recall/F1 over the joint scores.
SampleScore score_sample(const GroundTruthSample& sample, const Trajectory& traj,
                         JudgeHandle& judge,
                         const ToleranceMap* tolerance_overrides = nullptr);

// Per-task means over samples, plus the two suite-level F1 summaries.
SuiteReport aggregate(const std::vector<SampleScore>& scores);

}  // namespace streameval
