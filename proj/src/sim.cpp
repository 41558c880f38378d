#include "streameval/sim.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "streameval/errors.hpp"
#include "streameval/rng.hpp"

namespace streameval {

PolicySpec PolicySpec::delayed(double delta) {
    PolicySpec spec;
    spec.kind = Kind::Delayed;
    spec.delta = delta;
    return spec;
}

PolicySpec PolicySpec::jittered(double sigma, std::uint64_t seed) {
    PolicySpec spec;
    spec.kind = Kind::Jittered;
    spec.sigma = sigma;
    spec.seed = seed;
    return spec;
}

PolicySpec PolicySpec::chatty(double rate, std::uint64_t seed) {
    PolicySpec spec;
    spec.kind = Kind::Chatty;
    spec.rate = rate;
    spec.seed = seed;
    return spec;
}

PolicySpec PolicySpec::dropout(double p, std::uint64_t seed) {
    PolicySpec spec;
    spec.kind = Kind::Dropout;
    spec.p = p;
    spec.seed = seed;
    return spec;
}

PolicySpec PolicySpec::composite(std::vector<PolicySpec> policies) {
    PolicySpec spec;
    spec.kind = Kind::Composite;
    spec.policies = std::move(policies);
    return spec;
}

const std::vector<std::string>& chatty_placeholder_texts() {
    static const std::vector<std::string> kTexts = {
        "hmm, let me keep watching.",
        "something might be happening.",
        "still monitoring the stream.",
        "nothing definitive yet.",
        "checking the current frame.",
    };
    return kTexts;
}

namespace {

std::vector<TimedResponse> oracle_responses(const GroundTruthSample& sample) {
    std::vector<TimedResponse> out;
    out.reserve(sample.events.size());
    for (const auto& event : sample.events) {
        const double t = event.timing.kind == TimingSpec::Kind::Interval
                             ? (event.timing.start + event.timing.end) / 2.0
                             : event.timing.start;
        out.push_back({t, event.answer});
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const auto& a, const auto& b) { return a.t < b.t; });
    return out;
}

// Restores strict ordering after noisy transforms; collisions get a tiny
// forward nudge.
void sort_and_separate(std::vector<TimedResponse>& responses) {
    std::stable_sort(responses.begin(), responses.end(),
                     [](const auto& a, const auto& b) { return a.t < b.t; });
    for (std::size_t i = 1; i < responses.size(); ++i) {
        if (responses[i].t <= responses[i - 1].t) {
            responses[i].t = responses[i - 1].t + 1e-6;
        }
    }
}

void apply_transform(const GroundTruthSample& sample, const PolicySpec& policy,
                     std::vector<TimedResponse>& responses) {
    switch (policy.kind) {
        case PolicySpec::Kind::Oracle:
            return;  // identity on an existing trajectory
        case PolicySpec::Kind::Delayed:
            for (auto& r : responses) r.t += policy.delta;
            sort_and_separate(responses);
            return;
        case PolicySpec::Kind::Jittered: {
            DetRng rng(policy.seed);
            for (auto& r : responses) {
                const double noisy = r.t + rng.normal(0.0, policy.sigma);
                r.t = std::clamp(noisy, sample.query_time, sample.video_duration);
            }
            sort_and_separate(responses);
            return;
        }
        case PolicySpec::Kind::Chatty: {
            if (policy.rate < 0.0) throw ConfigError("chatty rate must be >= 0");
            DetRng rng(policy.seed);
            const double span = sample.video_duration - sample.query_time;
            const auto extra = static_cast<std::size_t>(policy.rate * span / 60.0);
            const auto& texts = chatty_placeholder_texts();
            for (std::size_t i = 0; i < extra; ++i) {
                const double t = sample.query_time + rng.uniform() * span;
                responses.push_back({t, texts[i % texts.size()]});
            }
            sort_and_separate(responses);
            return;
        }
        case PolicySpec::Kind::Dropout: {
            if (policy.p < 0.0 || policy.p > 1.0) {
                throw ConfigError("dropout probability must lie in [0,1]");
            }
            DetRng rng(policy.seed);
            std::vector<TimedResponse> kept;
            for (auto& r : responses) {
                if (rng.uniform() >= policy.p) kept.push_back(std::move(r));
            }
            responses = std::move(kept);
            return;
        }
        case PolicySpec::Kind::Composite:
            for (const auto& sub : policy.policies) {
                apply_transform(sample, sub, responses);
            }
            return;
    }
    throw ConfigError("unknown policy kind");
}

}  // namespace

Trajectory simulate(const GroundTruthSample& sample, const PolicySpec& policy) {
    validate(sample);
    auto responses = oracle_responses(sample);
    apply_transform(sample, policy, responses);

    Trajectory traj;
    traj.sample_id = sample.sample_id;
    // merge responses with silence at every free integer second
    std::size_t next_response = 0;
    const auto last_second = static_cast<long long>(std::floor(sample.video_duration));
    for (long long s = 0; s <= last_second; ++s) {
        const double t = static_cast<double>(s);
        while (next_response < responses.size() && responses[next_response].t < t) {
            traj.steps.push_back({responses[next_response].t, StepToken::Response,
                                  responses[next_response].text, std::nullopt});
            ++next_response;
        }
        if (next_response < responses.size() && responses[next_response].t == t) {
            traj.steps.push_back({t, StepToken::Response,
                                  responses[next_response].text, std::nullopt});
            ++next_response;
        } else {
            traj.steps.push_back({t, StepToken::Silence, std::nullopt, std::nullopt});
        }
    }
    while (next_response < responses.size()) {
        traj.steps.push_back({responses[next_response].t, StepToken::Response,
                              responses[next_response].text, std::nullopt});
        ++next_response;
    }
    validate(traj);
    return traj;
}

Trajectory parse_offline_transcript(const std::string& sample_id,
                                    const std::vector<TimedResponse>& per_frame_outputs) {
    // trimmed + lowercased; empty result means the frame emitted nothing
    const auto canonical = [](const std::string& text) {
        const auto begin = text.find_first_not_of(" \t\r\n");
        if (begin == std::string::npos) return std::string{};
        const auto end = text.find_last_not_of(" \t\r\n");
        std::string t = text.substr(begin, end - begin + 1);
        std::transform(t.begin(), t.end(), t.begin(),
                       [](unsigned char c) { return std::tolower(c); });
        return t;
    };
    Trajectory traj;
    traj.sample_id = sample_id;
    for (const auto& frame : per_frame_outputs) {
        const std::string canon = canonical(frame.text);
        const bool silent = canon.empty() || canon == "wait";
        TrajectoryStep step;
        step.t = frame.t;
        step.token = silent ? StepToken::Silence : StepToken::Response;
        if (!silent) step.text = frame.text;
        step.raw = frame.text;  // verbatim, for format scoring
        traj.steps.push_back(std::move(step));
    }
    validate(traj);
    return traj;
}

}  // namespace streameval
