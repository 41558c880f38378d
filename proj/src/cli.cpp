#include "streameval/cli.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "streameval/errors.hpp"
#include "streameval/http_judge.hpp"
#include "streameval/io.hpp"
#include "streameval/metric.hpp"
#include "streameval/ranking.hpp"
#include "streameval/report.hpp"
#include "streameval/reward.hpp"
#include "streameval/sim.hpp"

namespace streameval {

namespace {

using nlohmann::json;

std::unique_ptr<JudgeHandle> make_judge(const JudgeConfig& config, bool debug) {
    std::string backend = config.backend;
    if (backend == "auto") {
        backend = config.endpoint.empty() ? "stub" : "http";
    }
    if (backend == "stub") {
        auto judge = std::make_unique<StubJudge>();
        if (!config.stub_rules.empty()) configure_stub(*judge, config.stub_rules);
        return judge;
    }
    if (backend == "http") {
        if (config.endpoint.empty()) {
            throw ConfigError("http judge requires an endpoint");
        }
        HttpJudgeOptions options;
        options.endpoint = config.endpoint;
        options.model_name = config.model_name;
        options.credential_env_name = config.credential_env_name;
        options.max_concurrency = config.max_concurrency;
        options.timeout_s = config.timeout_s;
        options.retries = config.retries;
        auto judge = std::make_unique<HttpLlmJudge>(std::move(options));
        if (debug) {
            judge->set_debug_sink([](const std::string& line) { log_info(line); });
        }
        return judge;
    }
    throw ConfigError("unknown judge backend '" + config.backend + "'");
}

// Runs fn(i) for i in [0, n) on `workers` threads; rethrows the lowest-index
// failure so runs fail identically regardless of scheduling.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn) {
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> failures(n);
    std::vector<std::thread> pool;
    const int count = std::min<int>(workers, static_cast<int>(n));
    for (int w = 0; w < count; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    failures[i] = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& failure : failures) {
        if (failure) std::rethrow_exception(failure);
    }
}

struct CommonOptions {
    std::string config_path;
    std::string judge_backend;
    int workers = 1;
    bool debug_judge = false;
};

EngineConfig resolve_config(const CommonOptions& common) {
    EngineConfig config;
    if (!common.config_path.empty()) config = load_config(common.config_path);
    if (!common.judge_backend.empty()) config.judge.backend = common.judge_backend;
    return config;
}

void add_common(CLI::App* cmd, CommonOptions& common, bool with_judge = true) {
    cmd->add_option("--config", common.config_path, "engine configuration JSON");
    if (with_judge) {
        cmd->add_option("--judge", common.judge_backend, "judge backend: stub, http, auto")
            ->check(CLI::IsMember({"stub", "http", "auto"}));
        cmd->add_flag("--debug-judge", common.debug_judge,
                      "log judge traffic to stderr (credentials redacted)");
    }
    cmd->add_option("--workers", common.workers, "worker threads")->check(CLI::PositiveNumber);
}

std::map<std::string, const GroundTruthSample*> index_samples(
    const std::vector<GroundTruthSample>& samples) {
    std::map<std::string, const GroundTruthSample*> index;
    for (const auto& sample : samples) index[sample.sample_id] = &sample;
    return index;
}

// ---- score ----

int cmd_score(const std::string& gt_path, const std::string& pred_path,
              const CommonOptions& common, const std::string& out_dir) {
    const EngineConfig config = resolve_config(common);
    const auto samples = load_ground_truth(gt_path);
    const auto trajectories = load_trajectories(pred_path);
    const auto judge = make_judge(config.judge, common.debug_judge);

    const auto sample_index = index_samples(samples);
    std::map<std::string, const Trajectory*> traj_index;
    for (const auto& record : trajectories) {
        if (!sample_index.contains(record.trajectory.sample_id)) {
            throw InputError("trajectory sample_id '" + record.trajectory.sample_id +
                             "' has no ground-truth sample");
        }
        if (!traj_index.emplace(record.trajectory.sample_id, &record.trajectory).second) {
            throw InputError("duplicate trajectory for sample_id '" +
                             record.trajectory.sample_id + "'");
        }
    }
    for (const auto& sample : samples) {
        if (!traj_index.contains(sample.sample_id)) {
            throw InputError("no trajectory for sample_id '" + sample.sample_id + "'");
        }
    }

    // canonical order: sorted by sample_id (the map iteration order)
    std::vector<const GroundTruthSample*> ordered;
    for (const auto& [id, sample] : sample_index) ordered.push_back(sample);
    std::vector<SampleScore> scores(ordered.size());
    const ToleranceMap* overrides = config.tolerances.empty() ? nullptr : &config.tolerances;
    parallel_for(ordered.size(), common.workers, [&](std::size_t i) {
        scores[i] = score_sample(*ordered[i], *traj_index.at(ordered[i]->sample_id),
                                 *judge, overrides);
    });

    int parse_failures = 0;
    for (const auto& s : scores) parse_failures += s.pairs.iou_parse_failures;
    if (parse_failures > 0) {
        log_warn(std::to_string(parse_failures) +
                 " prediction(s) had unparseable grounding intervals and scored 0");
    }

    const SuiteReport report = aggregate(scores);
    std::filesystem::create_directories(out_dir);
    std::vector<json> records;
    for (const auto& s : scores) records.push_back(json(s));
    save_jsonl(out_dir + "/per_sample.jsonl", records);
    write_text_file(out_dir + "/suite.csv", suite_report_csv(report));
    write_text_file(out_dir + "/suite.md", suite_report_markdown(report));
    std::cout << suite_report_markdown(report);
    return kExitOk;
}

// ---- reward ----

int cmd_reward(const std::string& gt_path, const std::string& pred_path,
               const std::string& rubrics_path, const CommonOptions& common,
               const std::string& out_path, double tau_override) {
    EngineConfig config = resolve_config(common);
    if (tau_override > 0.0) config.rl.tau_rl = tau_override;
    const auto samples = load_ground_truth(gt_path);
    const auto trajectories = load_trajectories(pred_path);
    const auto checklists = load_checklists(rubrics_path);
    const auto judge = make_judge(config.judge, common.debug_judge);

    const auto sample_index = index_samples(samples);
    std::map<std::string, const RubricChecklist*> checklist_index;
    for (const auto& checklist : checklists) {
        checklist_index[checklist.sample_id] = &checklist;
    }

    // canonical order: (sample_id, rollout_id)
    std::vector<const TrajectoryRecord*> ordered;
    for (const auto& record : trajectories) ordered.push_back(&record);
    std::sort(ordered.begin(), ordered.end(), [](const auto* a, const auto* b) {
        if (a->trajectory.sample_id != b->trajectory.sample_id) {
            return a->trajectory.sample_id < b->trajectory.sample_id;
        }
        return a->rollout_id < b->rollout_id;
    });
    for (const auto* record : ordered) {
        const auto& id = record->trajectory.sample_id;
        if (!sample_index.contains(id)) {
            throw InputError("trajectory sample_id '" + id + "' has no ground-truth sample");
        }
        if (!checklist_index.contains(id)) {
            throw InputError("no rubric checklist for sample_id '" + id + "'");
        }
    }

    std::vector<RewardRecord> rewards(ordered.size());
    parallel_for(ordered.size(), common.workers, [&](std::size_t i) {
        const auto& record = *ordered[i];
        const auto& id = record.trajectory.sample_id;
        RewardRecord out;
        out.sample_id = id;
        out.rollout_id = record.rollout_id;
        out.breakdown = total_reward(*sample_index.at(id), record.trajectory,
                                     *checklist_index.at(id), *judge,
                                     config.rl.weights, config.rl.tau_rl);
        rewards[i] = std::move(out);
    });

    std::vector<json> records;
    for (const auto& r : rewards) records.push_back(json(r));
    save_jsonl(out_path, records);
    log_info("wrote " + std::to_string(records.size()) + " reward record(s) to " + out_path);
    return kExitOk;
}

// ---- rank ----

int cmd_rank(const std::string& in_path, const CommonOptions& common,
             std::int64_t seed, int n_bootstrap, bool seed_given, bool n_given,
             const std::string& out_path, const std::string& stability_path) {
    EngineConfig config = resolve_config(common);
    if (seed_given) config.rank.seed = seed;
    if (n_given) config.rank.n_bootstrap = n_bootstrap;
    const auto records = load_comparisons(in_path);
    const BTRanking ranking = bootstrap_rank(records, config.rank.n_bootstrap,
                                             config.rank.seed, common.workers);
    if (out_path.empty()) {
        std::cout << json(ranking).dump(2) << "\n";
    } else {
        save_json(out_path, json(ranking));
    }
    if (!stability_path.empty()) {
        write_text_file(stability_path, stability_csv(ranking.models, ranking.stability));
    }
    return kExitOk;
}

// ---- weights ----

int cmd_weights(std::int64_t n_silence, std::int64_t n_response,
                const CommonOptions& common, double beta, double lambda_text,
                bool beta_given, bool lambda_given, const std::string& out_path) {
    EngineConfig config = resolve_config(common);
    TokenBatchStats stats;
    stats.n_silence = n_silence;
    stats.n_response = n_response;
    stats.beta = beta_given ? beta : config.cb.beta;
    stats.lambda_text = lambda_given ? lambda_text : config.cb.lambda_text;
    const CbWeights weights = cb_weights(stats);
    if (out_path.empty()) {
        std::cout << json(weights).dump(2) << "\n";
    } else {
        save_json(out_path, json(weights));
    }
    return kExitOk;
}

// ---- simulate ----

int cmd_simulate(const std::string& gt_path, const std::string& policy_path,
                 const std::string& out_path) {
    const auto samples = load_ground_truth(gt_path);
    json policy_json;
    try {
        policy_json = json::parse(read_text_file(policy_path));
    } catch (const json::parse_error& e) {
        throw InputError("policy '" + policy_path + "': " + e.what());
    }
    const auto policy = policy_json.get<PolicySpec>();

    std::vector<const GroundTruthSample*> ordered;
    for (const auto& sample : samples) ordered.push_back(&sample);
    std::sort(ordered.begin(), ordered.end(),
              [](const auto* a, const auto* b) { return a->sample_id < b->sample_id; });
    std::vector<json> records;
    for (const auto* sample : ordered) {
        TrajectoryRecord record;
        record.trajectory = simulate(*sample, policy);
        records.push_back(json(record));
    }
    save_jsonl(out_path, records);
    log_info("wrote " + std::to_string(records.size()) + " trajectory record(s) to " +
             out_path);
    return kExitOk;
}

// ---- report ----

int cmd_report(const std::vector<std::string>& score_paths,
               const std::vector<std::string>& labels, const std::string& out_path) {
    if (!labels.empty() && labels.size() != score_paths.size()) {
        throw InputError("number of labels must match number of score files");
    }
    std::vector<LabeledScores> runs;
    for (std::size_t i = 0; i < score_paths.size(); ++i) {
        LabeledScores run;
        run.label = labels.empty()
                        ? std::filesystem::path(score_paths[i]).stem().string()
                        : labels[i];
        run.scores = load_sample_scores(score_paths[i]);
        runs.push_back(std::move(run));
    }
    const std::string table = dimension_report_markdown(runs);
    if (out_path.empty()) {
        std::cout << table;
    } else {
        write_text_file(out_path, table);
    }
    return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Proactive streaming trajectory evaluation toolkit"};
    app.require_subcommand(1);

    // score
    auto* score = app.add_subcommand("score", "trajectory-level F1 benchmark scoring");
    std::string score_gt, score_pred, score_out_dir = ".";
    CommonOptions score_common;
    score->add_option("--gt", score_gt, "ground-truth JSONL")->required();
    score->add_option("--pred", score_pred, "trajectory JSONL")->required();
    score->add_option("--out-dir", score_out_dir, "output directory");
    add_common(score, score_common);

    // reward
    auto* reward = app.add_subcommand("reward", "multi-grained RL reward computation");
    std::string reward_gt, reward_pred, reward_rubrics, reward_out = "rewards.jsonl";
    double reward_tau = 0.0;
    CommonOptions reward_common;
    reward->add_option("--gt", reward_gt, "ground-truth JSONL")->required();
    reward->add_option("--pred", reward_pred, "trajectory JSONL (rollouts)")->required();
    reward->add_option("--rubrics", reward_rubrics, "rubric checklist JSONL")->required();
    reward->add_option("--out", reward_out, "output JSONL");
    reward->add_option("--tau", reward_tau, "temporal tolerance for turn rewards")
        ->check(CLI::PositiveNumber);
    add_common(reward, reward_common);

    // rank
    auto* rank = app.add_subcommand("rank", "Bradley-Terry ranking from pairwise judgments");
    std::string rank_in, rank_out, rank_stability;
    std::int64_t rank_seed = 0;
    int rank_n = 1000;
    CommonOptions rank_common;
    rank->add_option("--in", rank_in, "comparison JSONL")->required();
    auto* seed_opt = rank->add_option("--seed", rank_seed, "bootstrap seed");
    auto* n_opt = rank->add_option("--n-bootstrap", rank_n, "bootstrap replicates")
                      ->check(CLI::PositiveNumber);
    rank->add_option("--out", rank_out, "ranking JSON (stdout when omitted)");
    rank->add_option("--stability-csv", rank_stability, "rank stability CSV");
    add_common(rank, rank_common, /*with_judge=*/false);

    // weights
    auto* weights = app.add_subcommand("weights", "class-balanced loss weights");
    std::int64_t w_silence = 0, w_response = 0;
    double w_beta = 0.9999, w_lambda = 2.0;
    std::string weights_out;
    CommonOptions weights_common;
    weights->add_option("--n-silence", w_silence, "silence token count")->required();
    weights->add_option("--n-response", w_response, "response token count")->required();
    auto* beta_opt = weights->add_option("--beta", w_beta, "reweighting hyperparameter");
    auto* lambda_opt = weights->add_option("--lambda-text", w_lambda, "language token factor");
    weights->add_option("--out", weights_out, "output JSON (stdout when omitted)");
    add_common(weights, weights_common, /*with_judge=*/false);

    // simulate
    auto* simulate = app.add_subcommand("simulate", "synthetic trajectories from policies");
    std::string sim_gt, sim_policy, sim_out = "trajectories.jsonl";
    simulate->add_option("--gt", sim_gt, "ground-truth JSONL")->required();
    simulate->add_option("--policy", sim_policy, "policy spec JSON")->required();
    simulate->add_option("--out", sim_out, "output JSONL");

    // report
    auto* report = app.add_subcommand("report", "dimension-grouped markdown report");
    std::vector<std::string> report_scores, report_labels;
    std::string report_out;
    report->add_option("--scores", report_scores, "per-sample score JSONL (repeatable)")
        ->required();
    report->add_option("--labels", report_labels, "row labels, one per score file");
    report->add_option("--out", report_out, "output markdown (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (score->parsed()) {
            return cmd_score(score_gt, score_pred, score_common, score_out_dir);
        }
        if (reward->parsed()) {
            return cmd_reward(reward_gt, reward_pred, reward_rubrics, reward_common,
                              reward_out, reward_tau);
        }
        if (rank->parsed()) {
            return cmd_rank(rank_in, rank_common, rank_seed, rank_n,
                            seed_opt->count() > 0, n_opt->count() > 0, rank_out,
                            rank_stability);
        }
        if (weights->parsed()) {
            return cmd_weights(w_silence, w_response, weights_common, w_beta, w_lambda,
                               beta_opt->count() > 0, lambda_opt->count() > 0,
                               weights_out);
        }
        if (simulate->parsed()) {
            return cmd_simulate(sim_gt, sim_policy, sim_out);
        }
        if (report->parsed()) {
            return cmd_report(report_scores, report_labels, report_out);
        }
        return kExitUsage;
    } catch (const ConfigError& e) {
        log_warn(std::string("configuration error: ") + e.what());
        return kExitJudgeConfig;
    } catch (const JudgeUnavailableError& e) {
        log_warn(std::string("judge unavailable: ") + e.what());
        return kExitJudgeUnavailable;
    } catch (const JudgeProtocolError& e) {
        log_warn(std::string("judge protocol error: ") + e.what());
        return kExitJudgeProtocol;
    } catch (const InputError& e) {
        log_warn(std::string("input error: ") + e.what());
        return kExitInput;
    } catch (const std::exception& e) {
        log_warn(std::string("internal error: ") + e.what());
        return kExitInternal;
    }
}

}  // namespace streameval
