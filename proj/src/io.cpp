#include "streameval/io.hpp"

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "streameval/errors.hpp"

namespace streameval {

using nlohmann::json;

namespace {

const json& require(const json& j, const char* field) {
    if (!j.is_object()) throw InputError("expected an object");
    auto it = j.find(field);
    if (it == j.end()) throw InputError(std::string("missing field '") + field + "'");
    return *it;
}

double require_number(const json& j, const char* field) {
    const json& v = require(j, field);
    if (!v.is_number()) throw InputError(std::string("field '") + field + "' must be a number");
    return v.get<double>();
}

std::int64_t require_integer(const json& j, const char* field) {
    const json& v = require(j, field);
    if (!v.is_number_integer()) {
        throw InputError(std::string("field '") + field + "' must be an integer");
    }
    return v.get<std::int64_t>();
}

std::string require_string(const json& j, const char* field) {
    const json& v = require(j, field);
    if (!v.is_string()) throw InputError(std::string("field '") + field + "' must be a string");
    return v.get<std::string>();
}

const json& require_array(const json& j, const char* field) {
    const json& v = require(j, field);
    if (!v.is_array()) throw InputError(std::string("field '") + field + "' must be an array");
    return v;
}

}  // namespace

void to_json(json& j, const TimingSpec& v) {
    if (v.kind == TimingSpec::Kind::Timestamp) {
        j = json{{"kind", "timestamp"}, {"t", v.start}};
    } else {
        j = json{{"kind", "interval"}, {"start", v.start}, {"end", v.end}};
    }
}

void from_json(const json& j, TimingSpec& v) {
    const std::string kind = require_string(j, "kind");
    if (kind == "timestamp") {
        v = TimingSpec::timestamp(require_number(j, "t"));
    } else if (kind == "interval") {
        v = TimingSpec::interval(require_number(j, "start"), require_number(j, "end"));
    } else {
        throw InputError("field 'kind' must be 'timestamp' or 'interval', got '" + kind + "'");
    }
}

void to_json(json& j, const GroundTruthEvent& v) {
    j = json{{"event_id", v.event_id}, {"answer", v.answer}, {"timing", v.timing}};
    if (v.window_override) {
        j["window_override"] = {{"lo", v.window_override->lo}, {"hi", v.window_override->hi}};
    }
    if (v.tau_override) {
        j["tau_override"] = {{"tau_early", v.tau_override->tau_early},
                             {"tau_late", v.tau_override->tau_late}};
    }
}

void from_json(const json& j, GroundTruthEvent& v) {
    v.event_id = require_string(j, "event_id");
    v.answer = require_string(j, "answer");
    v.timing = require(j, "timing").get<TimingSpec>();
    v.window_override.reset();
    v.tau_override.reset();
    if (j.contains("window_override") && !j["window_override"].is_null()) {
        const json& w = j["window_override"];
        v.window_override = WindowOverride{require_number(w, "lo"), require_number(w, "hi")};
    }
    if (j.contains("tau_override") && !j["tau_override"].is_null()) {
        const json& t = j["tau_override"];
        v.tau_override =
            TauOverride{require_number(t, "tau_early"), require_number(t, "tau_late")};
    }
}

void to_json(json& j, const GroundTruthSample& v) {
    j = json{{"sample_id", v.sample_id},     {"task", to_string(v.task)},
             {"video_duration", v.video_duration}, {"query", v.query},
             {"query_time", v.query_time},   {"events", v.events}};
}

void from_json(const json& j, GroundTruthSample& v) {
    v.sample_id = require_string(j, "sample_id");
    v.task = task_from_string(require_string(j, "task"));
    v.video_duration = require_number(j, "video_duration");
    v.query = require_string(j, "query");
    v.query_time = require_number(j, "query_time");
    v.events = require_array(j, "events").get<std::vector<GroundTruthEvent>>();
}

void to_json(json& j, const TrajectoryStep& v) {
    j = json{{"t", v.t}, {"token", v.token == StepToken::Silence ? "silence" : "response"}};
    if (v.text) j["text"] = *v.text;
    if (v.raw) j["raw"] = *v.raw;
}

void from_json(const json& j, TrajectoryStep& v) {
    v.t = require_number(j, "t");
    const std::string token = require_string(j, "token");
    if (token == "silence") {
        v.token = StepToken::Silence;
    } else if (token == "response") {
        v.token = StepToken::Response;
    } else {
        throw InputError("field 'token' must be 'silence' or 'response', got '" + token + "'");
    }
    v.text.reset();
    v.raw.reset();
    if (j.contains("text") && !j["text"].is_null()) v.text = j["text"].get<std::string>();
    if (j.contains("raw") && !j["raw"].is_null()) v.raw = j["raw"].get<std::string>();
}

void to_json(json& j, const Trajectory& v) {
    j = json{{"sample_id", v.sample_id}, {"steps", v.steps}};
}

void from_json(const json& j, Trajectory& v) {
    v.sample_id = require_string(j, "sample_id");
    v.steps = require_array(j, "steps").get<std::vector<TrajectoryStep>>();
}

void to_json(json& j, const TrajectoryRecord& v) {
    to_json(j, v.trajectory);
    j["rollout_id"] = v.rollout_id;
}

void from_json(const json& j, TrajectoryRecord& v) {
    from_json(j, v.trajectory);
    v.rollout_id = j.contains("rollout_id") ? require_integer(j, "rollout_id") : 0;
}

void to_json(json& j, const PairScore& v) {
    j = json{{"event_id", v.event_id}, {"pred_index", v.pred_index},
             {"s_time", v.s_time},     {"s_acc", v.s_acc},
             {"s_joint", v.s_joint},   {"s_additive", v.s_additive}};
}

void from_json(const json& j, PairScore& v) {
    v.event_id = require_string(j, "event_id");
    v.pred_index = static_cast<int>(require_integer(j, "pred_index"));
    v.s_time = require_number(j, "s_time");
    v.s_acc = require_number(j, "s_acc");
    v.s_joint = require_number(j, "s_joint");
    v.s_additive = require_number(j, "s_additive");
}

void to_json(json& j, const MatchResult& v) {
    j = json{{"pairs", v.pairs},
             {"unmatched_preds", v.unmatched_preds},
             {"unmatched_events", v.unmatched_events},
             {"iou_parse_failures", v.iou_parse_failures}};
}

void from_json(const json& j, MatchResult& v) {
    v.pairs = require_array(j, "pairs").get<std::vector<PairScore>>();
    v.unmatched_preds = require_array(j, "unmatched_preds").get<std::vector<int>>();
    v.unmatched_events =
        require_array(j, "unmatched_events").get<std::vector<std::string>>();
    v.iou_parse_failures =
        j.contains("iou_parse_failures") ? static_cast<int>(require_integer(j, "iou_parse_failures")) : 0;
}

void to_json(json& j, const RubricCheckpoint& v) {
    j = json{{"rubric_id", v.rubric_id},
             {"dimension", to_string(v.dimension)},
             {"rubric", v.rubric}};
    if (v.stub_keyword) j["stub_keyword"] = *v.stub_keyword;
}

void from_json(const json& j, RubricCheckpoint& v) {
    v.rubric_id = static_cast<int>(require_integer(j, "rubric_id"));
    v.dimension = rubric_dimension_from_string(require_string(j, "dimension"));
    v.rubric = require_string(j, "rubric");
    v.stub_keyword.reset();
    if (j.contains("stub_keyword") && !j["stub_keyword"].is_null()) {
        v.stub_keyword = j["stub_keyword"].get<std::string>();
    }
}

void to_json(json& j, const RubricChecklist& v) {
    j = json{{"sample_id", v.sample_id}, {"checkpoints", v.checkpoints}};
}

void from_json(const json& j, RubricChecklist& v) {
    v.sample_id = require_string(j, "sample_id");
    v.checkpoints = require_array(j, "checkpoints").get<std::vector<RubricCheckpoint>>();
}

void to_json(json& j, const ComparisonRecord& v) {
    j = json{{"model_a", v.model_a}, {"model_b", v.model_b},
             {"outcome", to_string(v.outcome)}};
}

void from_json(const json& j, ComparisonRecord& v) {
    v.model_a = require_string(j, "model_a");
    v.model_b = require_string(j, "model_b");
    v.outcome = outcome_from_string(require_string(j, "outcome"));
}

void to_json(json& j, const SampleScore& v) {
    j = json{{"sample_id", v.sample_id}, {"task", to_string(v.task)},
             {"precision", v.precision}, {"recall", v.recall},
             {"f1", v.f1},               {"mean_time", v.mean_time},
             {"mean_acc", v.mean_acc},   {"n_pred", v.n_pred},
             {"n_gt", v.n_gt},           {"pairs", v.pairs}};
}

void from_json(const json& j, SampleScore& v) {
    v.sample_id = require_string(j, "sample_id");
    v.task = task_from_string(require_string(j, "task"));
    v.precision = require_number(j, "precision");
    v.recall = require_number(j, "recall");
    v.f1 = require_number(j, "f1");
    v.mean_time = require_number(j, "mean_time");
    v.mean_acc = require_number(j, "mean_acc");
    v.n_pred = static_cast<int>(require_integer(j, "n_pred"));
    v.n_gt = static_cast<int>(require_integer(j, "n_gt"));
    v.pairs = require(j, "pairs").get<MatchResult>();
}

void to_json(json& j, const RewardRecord& v) {
    j = json{{"sample_id", v.sample_id},
             {"rollout_id", v.rollout_id},
             {"r_fmt", v.breakdown.r_fmt},
             {"r_turn", v.breakdown.r_turn},
             {"r_traj", v.breakdown.r_traj},
             {"total", v.breakdown.total},
             {"pairs", v.breakdown.pairs},
             {"checkpoint_scores", v.breakdown.checkpoint_scores}};
}

void from_json(const json& j, RewardRecord& v) {
    v.sample_id = require_string(j, "sample_id");
    v.rollout_id = require_integer(j, "rollout_id");
    v.breakdown.r_fmt = require_number(j, "r_fmt");
    v.breakdown.r_turn = require_number(j, "r_turn");
    v.breakdown.r_traj = require_number(j, "r_traj");
    v.breakdown.total = require_number(j, "total");
    v.breakdown.pairs = require(j, "pairs").get<MatchResult>();
    v.breakdown.checkpoint_scores =
        require_array(j, "checkpoint_scores").get<std::vector<int>>();
}

void to_json(json& j, const BTRanking& v) {
    j = json{{"models", v.models},       {"strengths", v.strengths},
             {"ranks", v.ranks},         {"stability", v.stability},
             {"seed", v.seed},           {"n_bootstrap", v.n_bootstrap},
             {"redraws", v.redraws}};
    json ci = json::object();
    for (const auto& [model, bounds] : v.ci) {
        ci[model] = json::array({bounds.first, bounds.second});
    }
    j["ci"] = ci;
}

void from_json(const json& j, BTRanking& v) {
    v.models = require_array(j, "models").get<std::vector<std::string>>();
    v.strengths = require(j, "strengths").get<std::map<std::string, double>>();
    v.ranks = require(j, "ranks").get<std::map<std::string, int>>();
    v.stability = require_array(j, "stability").get<std::vector<std::vector<double>>>();
    v.seed = require_integer(j, "seed");
    v.n_bootstrap = static_cast<int>(require_integer(j, "n_bootstrap"));
    v.redraws = j.contains("redraws") ? static_cast<int>(require_integer(j, "redraws")) : 0;
    v.ci.clear();
    for (const auto& [model, bounds] : require(j, "ci").items()) {
        if (!bounds.is_array() || bounds.size() != 2) {
            throw InputError("field 'ci' entries must be [lo, hi] pairs");
        }
        v.ci[model] = {bounds[0].get<double>(), bounds[1].get<double>()};
    }
}

void to_json(json& j, const CbWeights& v) {
    j = json{{"w_silence", v.w_silence},
             {"w_response", v.w_response},
             {"lambda_text", v.lambda_text}};
}

void from_json(const json& j, CbWeights& v) {
    v.w_silence = require_number(j, "w_silence");
    v.w_response = require_number(j, "w_response");
    v.lambda_text = require_number(j, "lambda_text");
}

void to_json(json& j, const ToleranceSpec& v) {
    j = json{{"window_lo", v.window_lo},
             {"window_hi", v.window_hi},
             {"tau_early", v.tau_early},
             {"tau_late", v.tau_late}};
}

void from_json(const json& j, ToleranceSpec& v) {
    v.window_lo = require_number(j, "window_lo");
    v.window_hi = require_number(j, "window_hi");
    v.tau_early = require_number(j, "tau_early");
    v.tau_late = require_number(j, "tau_late");
}

void to_json(json& j, const PolicySpec& v) {
    switch (v.kind) {
        case PolicySpec::Kind::Oracle: j = json{{"kind", "oracle"}}; return;
        case PolicySpec::Kind::Delayed:
            j = json{{"kind", "delayed"}, {"delta", v.delta}};
            return;
        case PolicySpec::Kind::Jittered:
            j = json{{"kind", "jittered"}, {"sigma", v.sigma}, {"seed", v.seed}};
            return;
        case PolicySpec::Kind::Chatty:
            j = json{{"kind", "chatty"}, {"rate", v.rate}, {"seed", v.seed}};
            return;
        case PolicySpec::Kind::Dropout:
            j = json{{"kind", "dropout"}, {"p", v.p}, {"seed", v.seed}};
            return;
        case PolicySpec::Kind::Composite:
            j = json{{"kind", "composite"}, {"policies", v.policies}};
            return;
    }
    throw InputError("unknown policy kind");
}

void from_json(const json& j, PolicySpec& v) {
    const std::string kind = require_string(j, "kind");
    if (kind == "oracle") {
        v = PolicySpec::oracle();
    } else if (kind == "delayed") {
        v = PolicySpec::delayed(require_number(j, "delta"));
    } else if (kind == "jittered") {
        v = PolicySpec::jittered(require_number(j, "sigma"),
                                 static_cast<std::uint64_t>(require_integer(j, "seed")));
    } else if (kind == "chatty") {
        v = PolicySpec::chatty(require_number(j, "rate"),
                               static_cast<std::uint64_t>(require_integer(j, "seed")));
    } else if (kind == "dropout") {
        v = PolicySpec::dropout(require_number(j, "p"),
                                static_cast<std::uint64_t>(require_integer(j, "seed")));
    } else if (kind == "composite") {
        v = PolicySpec::composite(
            require_array(j, "policies").get<std::vector<PolicySpec>>());
    } else {
        throw InputError("unknown policy kind: '" + kind + "'");
    }
}

void to_json(json& j, const EngineConfig& v) {
    json tolerances = json::object();
    for (const auto& [task, spec] : v.tolerances) tolerances[to_string(task)] = spec;
    j = json{
        {"judge",
         {{"backend", v.judge.backend},
          {"endpoint", v.judge.endpoint},
          {"model_name", v.judge.model_name},
          {"credential_env_name", v.judge.credential_env_name},
          {"max_concurrency", v.judge.max_concurrency},
          {"timeout_s", v.judge.timeout_s},
          {"retries", v.judge.retries},
          {"stub_rules", v.judge.stub_rules}}},
        {"tolerances", tolerances},
        {"rl",
         {{"tau_rl", v.rl.tau_rl},
          {"weights",
           {{"w_fmt", v.rl.weights.w_fmt},
            {"w_turn", v.rl.weights.w_turn},
            {"w_traj", v.rl.weights.w_traj}}}}},
        {"cb", {{"beta", v.cb.beta}, {"lambda_text", v.cb.lambda_text}}},
        {"rank", {{"n_bootstrap", v.rank.n_bootstrap}, {"seed", v.rank.seed}}},
    };
}

void from_json(const json& j, EngineConfig& v) {
    v = EngineConfig{};
    if (j.contains("judge")) {
        const json& judge = j["judge"];
        if (judge.contains("backend")) v.judge.backend = require_string(judge, "backend");
        if (judge.contains("endpoint")) v.judge.endpoint = require_string(judge, "endpoint");
        if (judge.contains("model_name")) v.judge.model_name = require_string(judge, "model_name");
        if (judge.contains("credential_env_name")) {
            v.judge.credential_env_name = require_string(judge, "credential_env_name");
        }
        if (judge.contains("max_concurrency")) {
            v.judge.max_concurrency = static_cast<int>(require_integer(judge, "max_concurrency"));
        }
        if (judge.contains("timeout_s")) v.judge.timeout_s = require_number(judge, "timeout_s");
        if (judge.contains("retries")) v.judge.retries = static_cast<int>(require_integer(judge, "retries"));
        if (judge.contains("stub_rules")) v.judge.stub_rules = require_string(judge, "stub_rules");
        if (v.judge.backend != "stub" && v.judge.backend != "http" && v.judge.backend != "auto") {
            throw InputError("judge.backend must be stub, http, or auto");
        }
    }
    if (j.contains("tolerances")) {
        for (const auto& [name, spec] : j["tolerances"].items()) {
            v.tolerances[task_from_string(name)] = spec.get<ToleranceSpec>();
        }
    }
    if (j.contains("rl")) {
        const json& rl = j["rl"];
        if (rl.contains("tau_rl")) v.rl.tau_rl = require_number(rl, "tau_rl");
        if (rl.contains("weights")) {
            const json& w = rl["weights"];
            if (w.contains("w_fmt")) v.rl.weights.w_fmt = require_number(w, "w_fmt");
            if (w.contains("w_turn")) v.rl.weights.w_turn = require_number(w, "w_turn");
            if (w.contains("w_traj")) v.rl.weights.w_traj = require_number(w, "w_traj");
        }
    }
    if (j.contains("cb")) {
        const json& cb = j["cb"];
        if (cb.contains("beta")) v.cb.beta = require_number(cb, "beta");
        if (cb.contains("lambda_text")) v.cb.lambda_text = require_number(cb, "lambda_text");
    }
    if (j.contains("rank")) {
        const json& rank = j["rank"];
        if (rank.contains("n_bootstrap")) {
            v.rank.n_bootstrap = static_cast<int>(require_integer(rank, "n_bootstrap"));
        }
        if (rank.contains("seed")) v.rank.seed = require_integer(rank, "seed");
    }
}

EngineConfig load_config(const std::string& path) {
    const std::string text = read_text_file(path);
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError("config '" + path + "': " + e.what());
    }
    try {
        return j.get<EngineConfig>();
    } catch (const InputError& e) {
        throw InputError("config '" + path + "': " + e.what());
    }
}

void configure_stub(StubJudge& judge, const std::string& rules_path) {
    const std::string text = read_text_file(rules_path);
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError("stub rules '" + rules_path + "': " + e.what());
    }
    if (j.contains("answers")) {
        for (const auto& row : j["answers"]) {
            judge.set_answer_score(require_string(row, "prediction"),
                                   require_string(row, "reference"),
                                   require_number(row, "score"));
        }
    }
    if (j.contains("rubric_keywords")) {
        for (const auto& [id, keyword] : j["rubric_keywords"].items()) {
            judge.set_rubric_keyword(std::stoi(id), keyword.get<std::string>());
        }
    }
}

namespace {

// Parses a JSONL file, applying `consume` per non-blank line. Collects every
// failure with its line number and throws once at the end.
template <typename Consume>
void for_each_jsonl_line(const std::string& path, Consume&& consume) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::vector<std::string> diagnostics;
    std::string line;
    for (long long line_no = 1; std::getline(in, line); ++line_no) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            json record = json::parse(line);
            consume(record);
        } catch (const json::parse_error& e) {
            diagnostics.push_back("line " + std::to_string(line_no) + ": " + e.what());
        } catch (const InputError& e) {
            diagnostics.push_back("line " + std::to_string(line_no) + ": " + e.what());
        } catch (const json::exception& e) {
            diagnostics.push_back("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (!diagnostics.empty()) {
        std::ostringstream msg;
        msg << "'" << path << "': " << diagnostics.size() << " rejected record(s)";
        for (const auto& d : diagnostics) msg << "\n  " << d;
        throw InputError(msg.str());
    }
}

}  // namespace

std::vector<GroundTruthSample> load_ground_truth(const std::string& path) {
    std::vector<GroundTruthSample> samples;
    std::set<std::string> seen;
    for_each_jsonl_line(path, [&](const json& record) {
        auto sample = record.get<GroundTruthSample>();
        validate(sample);
        if (!seen.insert(sample.sample_id).second) {
            throw InputError("duplicate sample_id '" + sample.sample_id + "'");
        }
        samples.push_back(std::move(sample));
    });
    return samples;
}

std::vector<TrajectoryRecord> load_trajectories(const std::string& path) {
    std::vector<TrajectoryRecord> records;
    for_each_jsonl_line(path, [&](const json& record) {
        auto rec = record.get<TrajectoryRecord>();
        validate(rec.trajectory);
        records.push_back(std::move(rec));
    });
    return records;
}

std::vector<RubricChecklist> load_checklists(const std::string& path) {
    std::vector<RubricChecklist> checklists;
    std::set<std::string> seen;
    for_each_jsonl_line(path, [&](const json& record) {
        auto checklist = record.get<RubricChecklist>();
        validate(checklist);
        if (!seen.insert(checklist.sample_id).second) {
            throw InputError("duplicate checklist for sample_id '" +
                             checklist.sample_id + "'");
        }
        checklists.push_back(std::move(checklist));
    });
    return checklists;
}

std::vector<ComparisonRecord> load_comparisons(const std::string& path) {
    std::vector<ComparisonRecord> records;
    for_each_jsonl_line(path, [&](const json& record) {
        auto rec = record.get<ComparisonRecord>();
        if (rec.model_a == rec.model_b) {
            throw InputError("model_a and model_b must differ");
        }
        records.push_back(std::move(rec));
    });
    return records;
}

std::vector<SampleScore> load_sample_scores(const std::string& path) {
    std::vector<SampleScore> scores;
    for_each_jsonl_line(path, [&](const json& record) {
        scores.push_back(record.get<SampleScore>());
    });
    return scores;
}

BTRanking load_ranking(const std::string& path) {
    const std::string text = read_text_file(path);
    try {
        return json::parse(text).get<BTRanking>();
    } catch (const json::exception& e) {
        throw InputError("ranking '" + path + "': " + e.what());
    }
}

void save_jsonl(const std::string& path, const std::vector<json>& records) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + path + "'");
    for (const auto& record : records) {
        out << record.dump() << "\n";
    }
}

void save_json(const std::string& path, const json& value) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << value.dump(2) << "\n";
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << content;
}

void log_warn(const std::string& message) {
    std::cerr << "[warn] " << message << "\n";
}

void log_info(const std::string& message) {
    std::cerr << "[info] " << message << "\n";
}

}  // namespace streameval
