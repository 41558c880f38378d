#include "streameval/timing.hpp"

#include <algorithm>

#include "streameval/errors.hpp"

namespace streameval {

ToleranceSpec default_tolerance(TaskKind task) {
    switch (task) {
        case TaskKind::EventUnderstanding:
        case TaskKind::TemporalPerception:
            return ToleranceSpec::symmetric(0.0, 3.0, 4.0);
        case TaskKind::ObjectUnderstanding:
            return ToleranceSpec::symmetric(-3.0, 3.0, 4.0);
        case TaskKind::AnomalyAlert:
            return ToleranceSpec::symmetric(0.0, 5.0, 6.0);
        case TaskKind::TemporalGrounding:
            return ToleranceSpec::symmetric(-3.0, 3.0, 4.0);
        case TaskKind::GoalPlanning:
            return ToleranceSpec::symmetric(-3.0, 0.0, 4.0);
        case TaskKind::RiskForecasting:
            return ToleranceSpec{-1.0, 3.0, 2.0, 4.0};
    }
    throw ConfigError("unknown TaskKind value");
}

ToleranceSpec effective_tolerance(TaskKind task, const GroundTruthEvent& event) {
    ToleranceSpec spec = default_tolerance(task);
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

double time_deviation(double t_pred, const TimingSpec& timing) {
    if (t_pred < timing.anchor_lo()) return timing.anchor_lo() - t_pred;
    if (t_pred > timing.anchor_hi()) return t_pred - timing.anchor_hi();
    return 0.0;
}

double time_score(double t_pred, const TimingSpec& timing, const ToleranceSpec& spec) {
    const bool early = t_pred < timing.anchor_lo();
    const double tau = early ? spec.tau_early : spec.tau_late;
    if (!(tau > 0.0)) {
        throw ConfigError("time_score: tau must be > 0");
    }
    const double dt = time_deviation(t_pred, timing);
    return std::max(0.0, 1.0 - dt / tau);
}

bool in_window(double t_pred, const TimingSpec& timing, const ToleranceSpec& spec) {
    return t_pred >= timing.anchor_lo() + spec.window_lo &&
           t_pred <= timing.anchor_hi() + spec.window_hi;
}

}  // namespace streameval
