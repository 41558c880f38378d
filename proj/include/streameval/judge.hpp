#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "streameval/types.hpp"

namespace streameval {

enum class RubricDimension { Granularity, Sequencing, Coverage };

std::string to_string(RubricDimension dim);
// Accepts "granularity", "sequencing", "coverage" and the alias "coherence"
// (-> Sequencing).
RubricDimension rubric_dimension_from_string(const std::string& name);

struct RubricCheckpoint {
    int rubric_id = 0;
    RubricDimension dimension = RubricDimension::Coverage;
    std::string rubric;  // assertive statement to verify
    // Keyword the stub judge greps for; ignored by real judges.
    std::optional<std::string> stub_keyword;

    friend bool operator==(const RubricCheckpoint&, const RubricCheckpoint&) = default;
};

struct RubricChecklist {
    std::string sample_id;
    std::vector<RubricCheckpoint> checkpoints;  // nonempty

    friend bool operator==(const RubricChecklist&, const RubricChecklist&) = default;
};

void validate(const RubricChecklist& checklist);

// Semantic-accuracy scoring backend. All answer scores lie in [0,1]; rubric
// verdicts are binary, one per checkpoint, order preserved.
class JudgeHandle {
public:
    virtual ~JudgeHandle() = default;

    virtual double score_answer(const std::string& question,
                                const std::string& prediction,
                                const std::string& reference) = 0;

    virtual std::vector<int> score_rubric(const std::string& trajectory_rendering,
                                          const RubricChecklist& checklist) = 0;

    virtual std::string name() const = 0;
};

// Deterministic judge for hermetic tests and offline runs.
//
// score_answer: 1.0 on normalized exact match, else the configured table
// entry for (prediction, reference), else 0.0.
// score_rubric: a checkpoint passes iff its keyword (the checkpoint's
// stub_keyword, or one configured here by rubric_id) occurs case-insensitively
// in the rendered trajectory.
class StubJudge : public JudgeHandle {
public:
    double score_answer(const std::string& question, const std::string& prediction,
                        const std::string& reference) override;
    std::vector<int> score_rubric(const std::string& trajectory_rendering,
                                  const RubricChecklist& checklist) override;
    std::string name() const override { return "stub"; }

    void set_answer_score(const std::string& prediction, const std::string& reference,
                          double score);
    void set_rubric_keyword(int rubric_id, const std::string& keyword);

    // lowercase, trimmed, inner whitespace collapsed
    static std::string normalize(const std::string& text);

private:
    std::map<std::pair<std::string, std::string>, double> answer_table_;
    std::map<int, std::string> rubric_keywords_;
};

// Interval parsing for temporal grounding answers. Accepted forms:
//   "Xs-Ys"          (units optional, "-" or "to" as separator)
//   "X to Y"
//   "X Y" / "X, Y"   (two bare numbers in order)
// Anything else is a parse failure.
std::optional<std::pair<double, double>> parse_time_interval(const std::string& text);

struct IouResult {
    double value = 0.0;
    bool parse_ok = false;
};

// |intersection| / |union| of the interval parsed from pred_text against
// gt_interval; unparseable text degrades to 0.0 with parse_ok = false.
IouResult score_iou(const std::string& pred_text,
                    std::pair<double, double> gt_interval);

// Judge for temporal grounding: reference and prediction are both interval
// texts; the score is their IoU. Rubric scoring is not meaningful here.
class IoUJudge : public JudgeHandle {
public:
    double score_answer(const std::string& question, const std::string& prediction,
                        const std::string& reference) override;
    std::vector<int> score_rubric(const std::string&, const RubricChecklist&) override;
    std::string name() const override { return "iou"; }
};

struct AccuracyScore {
    double value = 0.0;
    bool iou_parse_failed = false;
};

// Task-routed accuracy: IoU for temporal grounding (the event answer holds the
// ground-truth interval), the supplied judge for everything else.
AccuracyScore accuracy_score(const GroundTruthSample& sample,
                             const GroundTruthEvent& event,
                             const std::string& pred_text, JudgeHandle& judge);

// One line per valid response, "[t s] text", chronological. This is the
// rendering rubric evaluators see.
std::string render_trajectory(const Trajectory& traj);

// Minimal seconds formatting: 12 -> "12", 12.5 -> "12.5".
std::string format_seconds(double t);

}  // namespace streameval
