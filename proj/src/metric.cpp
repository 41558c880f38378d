#include "streameval/metric.hpp"

#include "streameval/errors.hpp"

namespace streameval {

SampleScore score_sample(const GroundTruthSample& sample, const Trajectory& traj,
                         JudgeHandle& judge,
                         const ToleranceMap* tolerance_overrides) {
    if (sample.sample_id != traj.sample_id) {
        throw InputError("trajectory '" + traj.sample_id +
                         "' does not belong to sample '" + sample.sample_id + "'");
    }
    validate(traj);

    const auto preds = eligible_responses(traj, sample.query_time);
    SampleScore score;
    score.sample_id = sample.sample_id;
    score.task = sample.task;
    score.n_pred = static_cast<int>(preds.size());
    score.n_gt = static_cast<int>(sample.events.size());
    score.pairs = match_prediction_first(sample, preds, judge, tolerance_overrides);

    double joint_sum = 0.0, time_sum = 0.0, acc_sum = 0.0;
    for (const auto& pair : score.pairs.pairs) {
        joint_sum += pair.s_joint;
        time_sum += pair.s_time;
        acc_sum += pair.s_acc;
    }
    score.precision = score.n_pred > 0 ? joint_sum / score.n_pred : 0.0;
    score.recall = joint_sum / score.n_gt;
    score.f1 = (score.precision + score.recall) > 0.0
                   ? 2.0 * score.precision * score.recall /
                         (score.precision + score.recall)
                   : 0.0;
    if (!score.pairs.pairs.empty()) {
        const auto n = static_cast<double>(score.pairs.pairs.size());
        score.mean_time = time_sum / n;
        score.mean_acc = acc_sum / n;
    }
    return score;
}

SuiteReport aggregate(const std::vector<SampleScore>& scores) {
    if (scores.empty()) throw InputError("aggregate: no sample scores given");

    SuiteReport report;
    for (const auto& s : scores) {
        auto& agg = report.per_task[s.task];
        agg.time += s.mean_time;
        agg.acc += s.mean_acc;
        agg.precision += s.precision;
        agg.recall += s.recall;
        agg.f1 += s.f1;
        agg.qa_count += 1;
    }
    double f1_sum = 0.0, weighted_sum = 0.0;
    long long total_count = 0;
    for (auto& [task, agg] : report.per_task) {
        const auto n = static_cast<double>(agg.qa_count);
        agg.time /= n;
        agg.acc /= n;
        agg.precision /= n;
        agg.recall /= n;
        agg.f1 /= n;
        f1_sum += agg.f1;
        weighted_sum += agg.f1 * agg.qa_count;
        total_count += agg.qa_count;
    }
    report.avg_f1 = f1_sum / static_cast<double>(report.per_task.size());
    report.weighted_avg_f1 = weighted_sum / static_cast<double>(total_count);
    return report;
}

}  // namespace streameval
