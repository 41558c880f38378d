#pragma once

#include <map>
#include <vector>

#include "streameval/judge.hpp"
#include "streameval/timing.hpp"
#include "streameval/types.hpp"

namespace streameval {

// Per-task tolerance overrides from configuration; event-level overrides still
// apply on top.
using ToleranceMap = std::map<TaskKind, ToleranceSpec>;

ToleranceSpec effective_tolerance(TaskKind task, const GroundTruthEvent& event,
                                  const ToleranceMap* overrides);

struct MatchResult {
    std::vector<PairScore> pairs;            // one entry per matched event, event order
    std::vector<int> unmatched_preds;        // ascending
    std::vector<std::string> unmatched_events;  // event order
    int iou_parse_failures = 0;              // diagnostic, surfaced in reports
};

// Judge calls are the expensive step; scores are memoized per
// (event index, prediction index) so both regimes and repeated runs over the
// same sample reuse them.
class AccuracyCache {
public:
    AccuracyScore get(const GroundTruthSample& sample, std::size_t event_index,
                      const std::vector<TimedResponse>& preds, std::size_t pred_index,
                      JudgeHandle& judge);

private:
    std::map<std::pair<std::size_t, std::size_t>, AccuracyScore> scores_;
};

// Benchmark regime. Predictions claim, in time order, the first event whose
// eligibility window contains them and are then consumed; per event the
// claimant with the highest joint score s_time * s_acc is kept, displaced
// claimants stay unmatched. Predictions before query_time never match.
// Ties break toward the earliest prediction time, then the lowest index.
MatchResult match_prediction_first(const GroundTruthSample& sample,
                                   const std::vector<TimedResponse>& preds,
                                   JudgeHandle& judge,
                                   const ToleranceMap* tolerance_overrides = nullptr,
                                   AccuracyCache* cache = nullptr);

// RL reward regime. Each event, in temporal order, binds the still-unmatched
// prediction maximizing the additive score s_time + s_acc among those within
// tau_rl of its anchor; goal_planning and risk_forecasting only look at
// predictions at or before the anchor. The time score decays with the same
// universal tau_rl. A prediction binds only with a strictly positive score.
MatchResult match_gt_first_optimal(const GroundTruthSample& sample,
                                   const std::vector<TimedResponse>& preds,
                                   JudgeHandle& judge, double tau_rl,
                                   AccuracyCache* cache = nullptr);

// RL-regime time score for one event: linear decay of the deviation from the
// anchor (interval deviation rule for interval timings) with tolerance tau_rl.
double rl_time_score(double t_pred, const TimingSpec& timing, double tau_rl);

// RL-regime eligibility window check (one-sided for proactive-agency tasks).
bool rl_in_window(double t_pred, const TimingSpec& timing, double tau_rl,
                  bool proactive_agency);

}  // namespace streameval
