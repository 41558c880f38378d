#pragma once

#include <cstdint>
#include <vector>

#include "streameval/types.hpp"

namespace streameval {

// Parametric streaming policies over ground-truth samples, for validating the
// metric and rewards against known degradations. Every stochastic kind is
// fully determined by its seed.
struct PolicySpec {
    enum class Kind { Oracle, Delayed, Jittered, Chatty, Dropout, Composite };

    Kind kind = Kind::Oracle;
    double delta = 0.0;     // Delayed: shift applied to every response time
    double sigma = 0.0;     // Jittered: stddev of Gaussian time noise
    double rate = 0.0;      // Chatty: spurious responses per minute
    double p = 0.0;         // Dropout: per-response removal probability
    std::uint64_t seed = 0;
    std::vector<PolicySpec> policies;  // Composite: applied left to right

    static PolicySpec oracle() { return {}; }
    static PolicySpec delayed(double delta);
    static PolicySpec jittered(double sigma, std::uint64_t seed);
    static PolicySpec chatty(double rate, std::uint64_t seed);
    static PolicySpec dropout(double p, std::uint64_t seed);
    static PolicySpec composite(std::vector<PolicySpec> policies);
};

// Placeholder texts Chatty draws from; kept disjoint from any fixture answer
// so the stub judge scores them zero.
const std::vector<std::string>& chatty_placeholder_texts();

// Oracle emits each event's reference answer at its best time (interval
// midpoint for interval timings); other kinds transform the oracle output.
// Silence steps fill every integer second of the video not occupied by a
// response.
Trajectory simulate(const GroundTruthSample& sample, const PolicySpec& policy);

// Adapter for frame-by-frame transcripts of offline models driven by the
// decision prompt: frames saying exactly "Wait" (case-insensitive, trimmed)
// become silence, any other nonempty emission becomes a response.
Trajectory parse_offline_transcript(const std::string& sample_id,
                                    const std::vector<TimedResponse>& per_frame_outputs);

}  // namespace streameval
