#pragma once

#include <string>
#include <utility>
#include <vector>

#include "streameval/matching.hpp"
#include "streameval/types.hpp"

namespace streameval {

inline constexpr char kSilenceToken[] = "</Silence>";
inline constexpr char kResponseToken[] = "</Response>";

struct RewardWeights {
    double w_fmt = 0.1;
    double w_turn = 0.45;
    double w_traj = 0.45;
};

struct RewardBreakdown {
    double r_fmt = 0.0;   // in [0,1]
    double r_turn = 0.0;  // in [0,2], additive step scores
    double r_traj = 0.0;  // in [0,1]
    double total = 0.0;   // w_fmt*r_fmt + w_turn*r_turn + w_traj*r_traj
    MatchResult pairs;
    std::vector<int> checkpoint_scores;
};

// Mean over all K steps of the per-step structural score: 1 for a standalone
// silence token or a response token followed by nonempty text, 0 otherwise.
// Judged on the step's raw emission; steps without one are reconstructed from
// their token and text.
double format_reward(const Trajectory& traj);

// GT-first optimal matching at tolerance tau_rl, then
// 2 * sum(additive scores) / (N_pred + N_gt).
std::pair<double, MatchResult> turn_reward(const GroundTruthSample& sample,
                                           const Trajectory& traj, JudgeHandle& judge,
                                           double tau_rl);

// Mean of the binary checkpoint verdicts on the rendered trajectory.
double trajectory_reward(const Trajectory& traj, const RubricChecklist& checklist,
                         JudgeHandle& judge);

RewardBreakdown total_reward(const GroundTruthSample& sample, const Trajectory& traj,
                             const RubricChecklist& checklist, JudgeHandle& judge,
                             const RewardWeights& weights, double tau_rl);

}  // namespace streameval
