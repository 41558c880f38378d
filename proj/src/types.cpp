#include "streameval/types.hpp"

#include <cmath>

#include "streameval/errors.hpp"

namespace streameval {

bool is_interval_task(TaskKind task) {
    return task == TaskKind::EventUnderstanding ||
           task == TaskKind::TemporalPerception;
}

bool is_proactive_agency_task(TaskKind task) {
    return task == TaskKind::GoalPlanning || task == TaskKind::RiskForecasting;
}

std::string to_string(TaskKind task) {
    switch (task) {
        case TaskKind::EventUnderstanding: return "event_understanding";
        case TaskKind::ObjectUnderstanding: return "object_understanding";
        case TaskKind::AnomalyAlert: return "anomaly_alert";
        case TaskKind::TemporalPerception: return "temporal_perception";
        case TaskKind::TemporalGrounding: return "temporal_grounding";
        case TaskKind::GoalPlanning: return "goal_planning";
        case TaskKind::RiskForecasting: return "risk_forecasting";
    }
    throw InputError("unknown TaskKind value");
}

TaskKind task_from_string(const std::string& name) {
    if (name == "event_understanding" || name == "EU") return TaskKind::EventUnderstanding;
    if (name == "object_understanding" || name == "OU") return TaskKind::ObjectUnderstanding;
    if (name == "anomaly_alert" || name == "AA") return TaskKind::AnomalyAlert;
    if (name == "temporal_perception" || name == "TP") return TaskKind::TemporalPerception;
    if (name == "temporal_grounding" || name == "TG") return TaskKind::TemporalGrounding;
    if (name == "goal_planning" || name == "GP") return TaskKind::GoalPlanning;
    if (name == "risk_forecasting" || name == "RF") return TaskKind::RiskForecasting;
    throw InputError("unknown task kind: '" + name + "'");
}

namespace {

void validate_timing(const TimingSpec& timing, const std::string& where) {
    if (!std::isfinite(timing.start) || !std::isfinite(timing.end)) {
        throw InputError(where + ": timing must be finite");
    }
    if (timing.start < 0.0) {
        throw InputError(where + ": times must be >= 0");
    }
    if (timing.kind == TimingSpec::Kind::Interval && timing.start > timing.end) {
        throw InputError(where + ": interval requires start <= end");
    }
    if (timing.kind == TimingSpec::Kind::Timestamp && timing.start != timing.end) {
        throw InputError(where + ": timestamp timing requires start == end");
    }
}

}  // namespace

void validate(const GroundTruthSample& sample) {
    const std::string prefix = "sample '" + sample.sample_id + "'";
    if (sample.sample_id.empty()) throw InputError("sample_id must be nonempty");
    if (sample.events.empty()) throw InputError(prefix + ": events must be nonempty");
    if (!(sample.video_duration > 0.0)) {
        throw InputError(prefix + ": video_duration must be > 0");
    }
    if (sample.query_time < 0.0 || sample.query_time > sample.video_duration) {
        throw InputError(prefix + ": query_time must lie in [0, video_duration]");
    }
    for (const auto& event : sample.events) {
        const std::string where = prefix + " event '" + event.event_id + "'";
        if (event.event_id.empty()) throw InputError(prefix + ": event_id must be nonempty");
        validate_timing(event.timing, where);
        if (event.timing.anchor_hi() > sample.video_duration) {
            throw InputError(where + ": anchor time exceeds video_duration");
        }
        if (event.window_override) {
            if (event.window_override->lo > event.window_override->hi) {
                throw InputError(where + ": window_override requires lo <= hi");
            }
        }
        if (event.tau_override) {
            if (!(event.tau_override->tau_early > 0.0) ||
                !(event.tau_override->tau_late > 0.0)) {
                throw InputError(where + ": tau_override values must be > 0");
            }
        }
    }
    for (std::size_t i = 1; i < sample.events.size(); ++i) {
        if (sample.events[i].timing.anchor_lo() <
            sample.events[i - 1].timing.anchor_lo()) {
            throw InputError(prefix + ": events must be in temporal order");
        }
    }
}

void validate(const Trajectory& traj) {
    if (traj.sample_id.empty()) throw InputError("trajectory sample_id must be nonempty");
    for (std::size_t i = 0; i < traj.steps.size(); ++i) {
        if (!std::isfinite(traj.steps[i].t)) {
            throw InputError("trajectory '" + traj.sample_id + "': step times must be finite");
        }
        if (i > 0 && !(traj.steps[i].t > traj.steps[i - 1].t)) {
            throw InputError("trajectory '" + traj.sample_id +
                             "': step times must be strictly increasing");
        }
    }
}

std::vector<TimedResponse> responses(const Trajectory& traj) {
    std::vector<TimedResponse> out;
    for (const auto& step : traj.steps) {
        if (step.token == StepToken::Response && step.text && !step.text->empty()) {
            out.push_back({step.t, *step.text});
        }
    }
    return out;
}

std::vector<TimedResponse> eligible_responses(const Trajectory& traj,
                                              double query_time) {
    std::vector<TimedResponse> out;
    for (auto& r : responses(traj)) {
        if (r.t >= query_time) out.push_back(std::move(r));
    }
    return out;
}

PairScore PairScore::make(std::string event_id, int pred_index, double s_time,
                          double s_acc) {
    PairScore p;
    p.event_id = std::move(event_id);
    p.pred_index = pred_index;
    p.s_time = s_time;
    p.s_acc = s_acc;
    p.s_joint = s_time * s_acc;
    p.s_additive = s_time + s_acc;
    return p;
}

}  // namespace streameval
