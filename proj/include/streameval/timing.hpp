#pragma once

#include "streameval/types.hpp"

namespace streameval {

// Per-task temporal tolerance. Window offsets are relative to the timing
// anchor: [anchor_lo + window_lo, anchor_hi + window_hi] is the eligibility
// window (inclusive on both ends). tau_early / tau_late govern the linear
// decay of the time score before / after the anchor.
//
// Eligibility and score are deliberately separate dials: a response can carry
// a positive decay score while sitting outside the window (it then never
// enters matching), and vice versa for one-sided windows.
struct ToleranceSpec {
    double window_lo = 0.0;
    double window_hi = 0.0;
    double tau_early = 1.0;
    double tau_late = 1.0;

    static ToleranceSpec symmetric(double window_lo, double window_hi, double tau) {
        return {window_lo, window_hi, tau, tau};
    }

    friend bool operator==(const ToleranceSpec&, const ToleranceSpec&) = default;
};

// Task defaults:
//   event_understanding / temporal_perception: window [start, end+3], tau 4
//   object_understanding: [-3, +3] about the transition moment, tau 4
//   anomaly_alert:        [0, +5] after onset, tau 6
//   temporal_grounding:   [-3, +3] about the event end, tau 4
//   goal_planning:        [-3, 0] about step completion, tau 4
//   risk_forecasting:     [-1, +3] about the warning time, tau 2 early / 4 late
ToleranceSpec default_tolerance(TaskKind task);

// Task default merged with the event's window/tau overrides.
ToleranceSpec effective_tolerance(TaskKind task, const GroundTruthEvent& event);

// Temporal deviation from the optimal timing: |t_pred - t| for timestamps,
// 0 inside an interval and distance to the nearest boundary outside it.
double time_deviation(double t_pred, const TimingSpec& timing);

// Linear decay max(0, 1 - dt/tau), with tau_early when t_pred precedes the
// anchor (or interval) and tau_late otherwise. Throws ConfigError on
// non-positive tau.
double time_score(double t_pred, const TimingSpec& timing, const ToleranceSpec& spec);

// true iff t_pred lies in [anchor_lo + window_lo, anchor_hi + window_hi].
bool in_window(double t_pred, const TimingSpec& timing, const ToleranceSpec& spec);

}  // namespace streameval
