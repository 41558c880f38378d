#include "streameval/reward.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "streameval/errors.hpp"

namespace streameval {

namespace {

std::string trimmed(const std::string& s) {
    auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return {};
    auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::string raw_emission(const TrajectoryStep& step) {
    if (step.raw) return *step.raw;
    if (step.token == StepToken::Silence) return kSilenceToken;
    std::string out = kResponseToken;
    if (step.text && !step.text->empty()) {
        out += " ";
        out += *step.text;
    }
    return out;
}

bool well_formed_step(const TrajectoryStep& step) {
    const std::string raw = trimmed(raw_emission(step));
    if (raw == kSilenceToken) return true;
    if (raw.rfind(kResponseToken, 0) == 0) {
        return !trimmed(raw.substr(std::string(kResponseToken).size())).empty();
    }
    return false;
}

void check_weights(const RewardWeights& weights) {
    if (weights.w_fmt < 0.0 || weights.w_turn < 0.0 || weights.w_traj < 0.0) {
        throw ConfigError("reward weights must be nonnegative");
    }
}

// Reruns a reward component with its name prepended to any failure.
template <typename Fn>
auto component(const char* name, Fn&& fn) {
    const auto context = [&](const std::string& what) {
        return std::string(name) + " reward: " + what;
    };
    try {
        return fn();
    } catch (const JudgeUnavailableError& e) {
        throw JudgeUnavailableError(context(e.what()), e.raw_reply());
    } catch (const JudgeProtocolError& e) {
        throw JudgeProtocolError(context(e.what()), e.raw_reply());
    } catch (const InputError& e) {
        throw InputError(context(e.what()));
    } catch (const ConfigError& e) {
        throw ConfigError(context(e.what()));
    }
}

}  // namespace

double format_reward(const Trajectory& traj) {
    if (traj.steps.empty()) {
        throw InputError("format_reward: trajectory '" + traj.sample_id + "' is empty");
    }
    validate(traj);
    long long good = 0;
    for (const auto& step : traj.steps) {
        good += well_formed_step(step) ? 1 : 0;
    }
    return static_cast<double>(good) / static_cast<double>(traj.steps.size());
}

std::pair<double, MatchResult> turn_reward(const GroundTruthSample& sample,
                                           const Trajectory& traj, JudgeHandle& judge,
                                           double tau_rl) {
    if (sample.sample_id != traj.sample_id) {
        throw InputError("trajectory '" + traj.sample_id +
                         "' does not belong to sample '" + sample.sample_id + "'");
    }
    validate(traj);
    const auto preds = eligible_responses(traj, sample.query_time);
    MatchResult match = match_gt_first_optimal(sample, preds, judge, tau_rl);
    double additive_sum = 0.0;
    for (const auto& pair : match.pairs) additive_sum += pair.s_additive;
    const double denom = static_cast<double>(preds.size() + sample.events.size());
    const double reward = denom > 0.0 ? 2.0 * additive_sum / denom : 0.0;
    return {reward, std::move(match)};
}

namespace {

double rubric_mean(const std::vector<int>& verdicts, const RubricChecklist& checklist) {
    if (verdicts.size() != checklist.checkpoints.size()) {
        throw JudgeProtocolError("rubric verdict count " + std::to_string(verdicts.size()) +
                                 " does not match checklist size " +
                                 std::to_string(checklist.checkpoints.size()));
    }
    long long passed = 0;
    for (int v : verdicts) {
        if (v != 0 && v != 1) {
            throw JudgeProtocolError("rubric verdicts must be 0 or 1, got " +
                                     std::to_string(v));
        }
        passed += v;
    }
    return static_cast<double>(passed) / static_cast<double>(verdicts.size());
}

}  // namespace

double trajectory_reward(const Trajectory& traj, const RubricChecklist& checklist,
                         JudgeHandle& judge) {
    validate(checklist);
    validate(traj);
    const auto verdicts = judge.score_rubric(render_trajectory(traj), checklist);
    return rubric_mean(verdicts, checklist);
}

RewardBreakdown total_reward(const GroundTruthSample& sample, const Trajectory& traj,
                             const RubricChecklist& checklist, JudgeHandle& judge,
                             const RewardWeights& weights, double tau_rl) {
    check_weights(weights);
    RewardBreakdown breakdown;
    breakdown.r_fmt = component("format", [&] { return format_reward(traj); });
    auto [turn, match] = component("turn-level", [&] {
        return turn_reward(sample, traj, judge, tau_rl);
    });
    breakdown.r_turn = turn;
    breakdown.pairs = std::move(match);
    breakdown.r_traj = component("trajectory-level", [&] {
        validate(checklist);
        breakdown.checkpoint_scores = judge.score_rubric(render_trajectory(traj), checklist);
        return rubric_mean(breakdown.checkpoint_scores, checklist);
    });
    breakdown.total = weights.w_fmt * breakdown.r_fmt +
                      weights.w_turn * breakdown.r_turn +
                      weights.w_traj * breakdown.r_traj;
    return breakdown;
}

}  // namespace streameval
