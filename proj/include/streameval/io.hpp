#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "streameval/cb_loss.hpp"
#include "streameval/judge.hpp"
#include "streameval/matching.hpp"
#include "streameval/metric.hpp"
#include "streameval/ranking.hpp"
#include "streameval/reward.hpp"
#include "streameval/sim.hpp"
#include "streameval/timing.hpp"
#include "streameval/types.hpp"

namespace streameval {

// nlohmann hooks. Encodings are stable: object keys are emitted in sorted
// order and numbers use shortest round-trip form, so identical values produce
// identical bytes.
void to_json(nlohmann::json& j, const TimingSpec& v);
void from_json(const nlohmann::json& j, TimingSpec& v);
void to_json(nlohmann::json& j, const GroundTruthEvent& v);
void from_json(const nlohmann::json& j, GroundTruthEvent& v);
void to_json(nlohmann::json& j, const GroundTruthSample& v);
void from_json(const nlohmann::json& j, GroundTruthSample& v);
void to_json(nlohmann::json& j, const TrajectoryStep& v);
void from_json(const nlohmann::json& j, TrajectoryStep& v);
void to_json(nlohmann::json& j, const Trajectory& v);
void from_json(const nlohmann::json& j, Trajectory& v);
void to_json(nlohmann::json& j, const PairScore& v);
void from_json(const nlohmann::json& j, PairScore& v);
void to_json(nlohmann::json& j, const MatchResult& v);
void from_json(const nlohmann::json& j, MatchResult& v);
void to_json(nlohmann::json& j, const RubricCheckpoint& v);
void from_json(const nlohmann::json& j, RubricCheckpoint& v);
void to_json(nlohmann::json& j, const RubricChecklist& v);
void from_json(const nlohmann::json& j, RubricChecklist& v);
void to_json(nlohmann::json& j, const ComparisonRecord& v);
void from_json(const nlohmann::json& j, ComparisonRecord& v);
void to_json(nlohmann::json& j, const SampleScore& v);
void from_json(const nlohmann::json& j, SampleScore& v);
void to_json(nlohmann::json& j, const BTRanking& v);
void from_json(const nlohmann::json& j, BTRanking& v);
void to_json(nlohmann::json& j, const CbWeights& v);
void from_json(const nlohmann::json& j, CbWeights& v);
void to_json(nlohmann::json& j, const ToleranceSpec& v);
void from_json(const nlohmann::json& j, ToleranceSpec& v);
void to_json(nlohmann::json& j, const PolicySpec& v);
void from_json(const nlohmann::json& j, PolicySpec& v);

// A trajectory plus the rollout it came from; several rollouts may share one
// sample_id in reward streams.
struct TrajectoryRecord {
    Trajectory trajectory;
    std::int64_t rollout_id = 0;
};

void to_json(nlohmann::json& j, const TrajectoryRecord& v);
void from_json(const nlohmann::json& j, TrajectoryRecord& v);

struct RewardRecord {
    std::string sample_id;
    std::int64_t rollout_id = 0;
    RewardBreakdown breakdown;
};

void to_json(nlohmann::json& j, const RewardRecord& v);
void from_json(const nlohmann::json& j, RewardRecord& v);

// ---- engine configuration ----

struct JudgeConfig {
    std::string backend = "stub";  // stub | http | auto
    std::string endpoint;
    std::string model_name;
    std::string credential_env_name;
    int max_concurrency = 4;
    double timeout_s = 30.0;
    int retries = 3;
    std::string stub_rules;  // optional path to a stub rule table
};

struct RlConfig {
    double tau_rl = 8.0;
    RewardWeights weights;
};

struct CbConfig {
    double beta = 0.9999;
    double lambda_text = 2.0;
};

struct RankConfig {
    int n_bootstrap = 1000;
    std::int64_t seed = 0;
};

struct EngineConfig {
    JudgeConfig judge;
    ToleranceMap tolerances;  // per-task overrides; empty means defaults
    RlConfig rl;
    CbConfig cb;
    RankConfig rank;
};

void to_json(nlohmann::json& j, const EngineConfig& v);
void from_json(const nlohmann::json& j, EngineConfig& v);

EngineConfig load_config(const std::string& path);

// Stub rule table: {"answers":[{"prediction":..,"reference":..,"score":..}],
// "rubric_keywords":{"<rubric_id>": "keyword"}}
void configure_stub(StubJudge& judge, const std::string& rules_path);

// ---- JSONL loading (strict: any bad line fails the load, every diagnostic
// names its line and field) ----

std::vector<GroundTruthSample> load_ground_truth(const std::string& path);
std::vector<TrajectoryRecord> load_trajectories(const std::string& path);
std::vector<RubricChecklist> load_checklists(const std::string& path);
std::vector<ComparisonRecord> load_comparisons(const std::string& path);
std::vector<SampleScore> load_sample_scores(const std::string& path);
BTRanking load_ranking(const std::string& path);

// ---- emission (UTF-8, LF, one record per line) ----

void save_jsonl(const std::string& path, const std::vector<nlohmann::json>& records);
void save_json(const std::string& path, const nlohmann::json& value);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// Structured diagnostics go to stderr, never to data streams.
void log_warn(const std::string& message);
void log_info(const std::string& message);

}  // namespace streameval
