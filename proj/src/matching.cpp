#include "streameval/matching.hpp"

#include <algorithm>

#include "streameval/errors.hpp"

namespace streameval {

namespace {

void check_preds(const GroundTruthSample& sample,
                 const std::vector<TimedResponse>& preds) {
    for (std::size_t i = 1; i < preds.size(); ++i) {
        if (preds[i].t < preds[i - 1].t) {
            throw InputError("sample '" + sample.sample_id +
                             "': predictions must be time-ordered");
        }
    }
}

// Augments judge failures with the (event, prediction) they occurred on,
// preserving the error type.
template <typename Fn>
AccuracyScore scored_with_context(const GroundTruthSample& sample,
                                  const GroundTruthEvent& event,
                                  std::size_t pred_index, Fn&& fn) {
    const auto context = [&](const std::string& what) {
        return "while scoring event '" + event.event_id + "' against prediction #" +
               std::to_string(pred_index) + " of sample '" + sample.sample_id +
               "': " + what;
    };
    try {
        return fn();
    } catch (const JudgeUnavailableError& e) {
        throw JudgeUnavailableError(context(e.what()), e.raw_reply());
    } catch (const JudgeProtocolError& e) {
        throw JudgeProtocolError(context(e.what()), e.raw_reply());
    } catch (const InputError& e) {
        throw InputError(context(e.what()));
    }
}

struct Candidate {
    std::size_t pred_index;
    double s_time;
    double s_acc;
};

// earliest prediction time, then lowest index
bool tie_preferred(const std::vector<TimedResponse>& preds, std::size_t lhs,
                   std::size_t rhs) {
    if (preds[lhs].t != preds[rhs].t) return preds[lhs].t < preds[rhs].t;
    return lhs < rhs;
}

}  // namespace

ToleranceSpec effective_tolerance(TaskKind task, const GroundTruthEvent& event,
                                  const ToleranceMap* overrides) {
    ToleranceSpec spec = default_tolerance(task);
    if (overrides) {
        if (auto it = overrides->find(task); it != overrides->end()) {
            spec = it->second;
        }
    }
    if (event.window_override) {
        spec.window_lo = event.window_override->lo;
        spec.window_hi = event.window_override->hi;
    }
    if (event.tau_override) {
        spec.tau_early = event.tau_override->tau_early;
        spec.tau_late = event.tau_override->tau_late;
    }
    return spec;
}

AccuracyScore AccuracyCache::get(const GroundTruthSample& sample,
                                 std::size_t event_index,
                                 const std::vector<TimedResponse>& preds,
                                 std::size_t pred_index, JudgeHandle& judge) {
    const auto key = std::make_pair(event_index, pred_index);
    if (auto it = scores_.find(key); it != scores_.end()) return it->second;
    const auto& event = sample.events[event_index];
    AccuracyScore score = scored_with_context(sample, event, pred_index, [&] {
        return accuracy_score(sample, event, preds[pred_index].text, judge);
    });
    scores_.emplace(key, score);
    return score;
}

MatchResult match_prediction_first(const GroundTruthSample& sample,
                                   const std::vector<TimedResponse>& preds,
                                   JudgeHandle& judge,
                                   const ToleranceMap* tolerance_overrides,
                                   AccuracyCache* cache) {
    validate(sample);
    check_preds(sample, preds);

    AccuracyCache local_cache;
    AccuracyCache& scores = cache ? *cache : local_cache;

    std::vector<ToleranceSpec> tolerances;
    tolerances.reserve(sample.events.size());
    for (const auto& event : sample.events) {
        tolerances.push_back(effective_tolerance(sample.task, event, tolerance_overrides));
    }

    // Pass 1: each prediction claims the first event whose window contains it.
    std::vector<std::vector<std::size_t>> claimants(sample.events.size());
    for (std::size_t p = 0; p < preds.size(); ++p) {
        if (preds[p].t < sample.query_time) continue;
        for (std::size_t e = 0; e < sample.events.size(); ++e) {
            if (in_window(preds[p].t, sample.events[e].timing, tolerances[e])) {
                claimants[e].push_back(p);
                break;
            }
        }
    }

    // Pass 2: per event keep the claimant with the highest joint score.
    MatchResult result;
    std::vector<bool> paired(preds.size(), false);
    for (std::size_t e = 0; e < sample.events.size(); ++e) {
        const auto& event = sample.events[e];
        bool have_best = false;
        Candidate best{0, 0.0, 0.0};
        double best_joint = -1.0;
        for (std::size_t p : claimants[e]) {
            const double s_time = time_score(preds[p].t, event.timing, tolerances[e]);
            const AccuracyScore acc = scores.get(sample, e, preds, p, judge);
            result.iou_parse_failures += acc.iou_parse_failed ? 1 : 0;
            const double joint = s_time * acc.value;
            if (!have_best || joint > best_joint ||
                (joint == best_joint && tie_preferred(preds, p, best.pred_index))) {
                have_best = true;
                best = {p, s_time, acc.value};
                best_joint = joint;
            }
        }
        if (have_best) {
            paired[best.pred_index] = true;
            result.pairs.push_back(PairScore::make(
                event.event_id, static_cast<int>(best.pred_index), best.s_time, best.s_acc));
        } else {
            result.unmatched_events.push_back(event.event_id);
        }
    }
    for (std::size_t p = 0; p < preds.size(); ++p) {
        if (!paired[p]) result.unmatched_preds.push_back(static_cast<int>(p));
    }
    return result;
}

double rl_time_score(double t_pred, const TimingSpec& timing, double tau_rl) {
    if (!(tau_rl > 0.0)) throw ConfigError("tau_rl must be > 0");
    return std::max(0.0, 1.0 - time_deviation(t_pred, timing) / tau_rl);
}

bool rl_in_window(double t_pred, const TimingSpec& timing, double tau_rl,
                  bool proactive_agency) {
    if (!(tau_rl > 0.0)) throw ConfigError("tau_rl must be > 0");
    const double lo = timing.anchor_lo() - tau_rl;
    const double hi = proactive_agency ? timing.anchor_hi() : timing.anchor_hi() + tau_rl;
    return t_pred >= lo && t_pred <= hi;
}

MatchResult match_gt_first_optimal(const GroundTruthSample& sample,
                                   const std::vector<TimedResponse>& preds,
                                   JudgeHandle& judge, double tau_rl,
                                   AccuracyCache* cache) {
    validate(sample);
    check_preds(sample, preds);
    if (!(tau_rl > 0.0)) throw ConfigError("tau_rl must be > 0");

    AccuracyCache local_cache;
    AccuracyCache& scores = cache ? *cache : local_cache;
    const bool one_sided = is_proactive_agency_task(sample.task);

    MatchResult result;
    std::vector<bool> paired(preds.size(), false);
    for (std::size_t e = 0; e < sample.events.size(); ++e) {
        const auto& event = sample.events[e];
        bool have_best = false;
        Candidate best{0, 0.0, 0.0};
        double best_additive = 0.0;  // a prediction binds only with score > 0
        for (std::size_t p = 0; p < preds.size(); ++p) {
            if (paired[p] || preds[p].t < sample.query_time) continue;
            if (!rl_in_window(preds[p].t, event.timing, tau_rl, one_sided)) continue;
            const double s_time = rl_time_score(preds[p].t, event.timing, tau_rl);
            const AccuracyScore acc = scores.get(sample, e, preds, p, judge);
            result.iou_parse_failures += acc.iou_parse_failed ? 1 : 0;
            const double additive = s_time + acc.value;
            if (additive > best_additive) {
                have_best = true;
                best = {p, s_time, acc.value};
                best_additive = additive;
            }
        }
        if (have_best) {
            paired[best.pred_index] = true;
            result.pairs.push_back(PairScore::make(
                event.event_id, static_cast<int>(best.pred_index), best.s_time, best.s_acc));
        } else {
            result.unmatched_events.push_back(event.event_id);
        }
    }
    for (std::size_t p = 0; p < preds.size(); ++p) {
        if (!paired[p]) result.unmatched_preds.push_back(static_cast<int>(p));
    }
    return result;
}

}  // namespace streameval
