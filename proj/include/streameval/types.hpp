#pragma once

#include <optional>
#include <string>
#include <vector>

namespace streameval {

// Units policy: all times are real-valued seconds. 1 FPS frame streams are the
// special case t = 0, 1, 2, ...

enum class TaskKind {
    EventUnderstanding,
    ObjectUnderstanding,
    AnomalyAlert,
    TemporalPerception,
    TemporalGrounding,
    GoalPlanning,
    RiskForecasting,
};

constexpr TaskKind kAllTasks[] = {
    TaskKind::EventUnderstanding,  TaskKind::ObjectUnderstanding,
    TaskKind::AnomalyAlert,        TaskKind::TemporalPerception,
    TaskKind::TemporalGrounding,   TaskKind::GoalPlanning,
    TaskKind::RiskForecasting,
};

// EU and TP anchor on an event interval; everything else anchors on a moment.
bool is_interval_task(TaskKind task);

// GP and RF expect answers before the event unfolds; the RL matcher uses a
// one-sided window for them.
bool is_proactive_agency_task(TaskKind task);

std::string to_string(TaskKind task);
TaskKind task_from_string(const std::string& name);

// Optimal response timing of one ground-truth event: either a single moment or
// an interval [start, end] during which any response gets full time credit.
struct TimingSpec {
    enum class Kind { Timestamp, Interval };

    Kind kind = Kind::Timestamp;
    double start = 0.0;  // == end for Timestamp
    double end = 0.0;

    static TimingSpec timestamp(double t) { return {Kind::Timestamp, t, t}; }
    static TimingSpec interval(double start, double end) {
        return {Kind::Interval, start, end};
    }

    double anchor_lo() const { return start; }
    double anchor_hi() const { return end; }

    friend bool operator==(const TimingSpec&, const TimingSpec&) = default;
};

struct WindowOverride {
    double lo = 0.0;  // offset from anchor_lo, may be negative
    double hi = 0.0;  // offset from anchor_hi

    friend bool operator==(const WindowOverride&, const WindowOverride&) = default;
};

struct TauOverride {
    double tau_early = 0.0;  // must be > 0
    double tau_late = 0.0;   // must be > 0

    friend bool operator==(const TauOverride&, const TauOverride&) = default;
};

struct GroundTruthEvent {
    std::string event_id;
    std::string answer;
    TimingSpec timing;
    std::optional<WindowOverride> window_override;
    std::optional<TauOverride> tau_override;

    friend bool operator==(const GroundTruthEvent&, const GroundTruthEvent&) = default;
};

struct GroundTruthSample {
    std::string sample_id;
    TaskKind task = TaskKind::EventUnderstanding;
    double video_duration = 0.0;
    std::string query;
    double query_time = 0.0;
    std::vector<GroundTruthEvent> events;  // nonempty, in temporal order

    std::size_t n_gt() const { return events.size(); }

    friend bool operator==(const GroundTruthSample&, const GroundTruthSample&) = default;
};

// Throws InputError naming the offending field when an invariant is violated.
void validate(const GroundTruthSample& sample);

enum class StepToken { Silence, Response };

struct TrajectoryStep {
    double t = 0.0;
    StepToken token = StepToken::Silence;
    std::optional<std::string> text;  // answer text for Response steps
    std::optional<std::string> raw;   // verbatim emission, for format scoring

    friend bool operator==(const TrajectoryStep&, const TrajectoryStep&) = default;
};

struct Trajectory {
    std::string sample_id;
    std::vector<TrajectoryStep> steps;  // strictly increasing in t

    std::size_t length() const { return steps.size(); }

    friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

void validate(const Trajectory& traj);

struct TimedResponse {
    double t = 0.0;
    std::string text;

    friend bool operator==(const TimedResponse&, const TimedResponse&) = default;
};

// Response steps with nonempty text, order preserved. Empty-text responses
// count toward trajectory length K but are not valid answers.
std::vector<TimedResponse> responses(const Trajectory& traj);

// responses() further restricted to t >= query_time; this is the prediction
// pool the matchers and metrics see, and its size is N_pred.
std::vector<TimedResponse> eligible_responses(const Trajectory& traj,
                                              double query_time);

// Scores of one matched (event, prediction) pair. s_joint multiplies time and
// accuracy (benchmark metric); s_additive sums them (RL reward).
struct PairScore {
    std::string event_id;
    int pred_index = -1;
    double s_time = 0.0;
    double s_acc = 0.0;
    double s_joint = 0.0;     // s_time * s_acc
    double s_additive = 0.0;  // s_time + s_acc

    static PairScore make(std::string event_id, int pred_index, double s_time,
                          double s_acc);

    friend bool operator==(const PairScore&, const PairScore&) = default;
};

}  // namespace streameval
