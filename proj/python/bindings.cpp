#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "streameval/cb_loss.hpp"
#include "streameval/errors.hpp"
#include "streameval/http_judge.hpp"
#include "streameval/io.hpp"
#include "streameval/matching.hpp"
#include "streameval/metric.hpp"
#include "streameval/prompts.hpp"
#include "streameval/ranking.hpp"
#include "streameval/report.hpp"
#include "streameval/reward.hpp"
#include "streameval/sim.hpp"
#include "streameval/timing.hpp"

namespace py = pybind11;
using namespace streameval;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Proactive streaming trajectory evaluation: trajectory-level F1, "
              "multi-grained RL rewards, class-balanced loss weights, and "
              "Bradley-Terry ranking.";

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<JudgeUnavailableError>(m, "JudgeUnavailableError",
                                                  PyExc_RuntimeError);
    py::register_exception<JudgeProtocolError>(m, "JudgeProtocolError",
                                               PyExc_RuntimeError);

    py::enum_<TaskKind>(m, "TaskKind")
        .value("EVENT_UNDERSTANDING", TaskKind::EventUnderstanding)
        .value("OBJECT_UNDERSTANDING", TaskKind::ObjectUnderstanding)
        .value("ANOMALY_ALERT", TaskKind::AnomalyAlert)
        .value("TEMPORAL_PERCEPTION", TaskKind::TemporalPerception)
        .value("TEMPORAL_GROUNDING", TaskKind::TemporalGrounding)
        .value("GOAL_PLANNING", TaskKind::GoalPlanning)
        .value("RISK_FORECASTING", TaskKind::RiskForecasting);
    m.def("task_from_string", &task_from_string, py::arg("name"));
    m.def("task_to_string", py::overload_cast<TaskKind>(&to_string), py::arg("task"));

    py::class_<TimingSpec>(m, "TimingSpec")
        .def_static("timestamp", &TimingSpec::timestamp, py::arg("t"))
        .def_static("interval", &TimingSpec::interval, py::arg("start"), py::arg("end"))
        .def_readonly("start", &TimingSpec::start)
        .def_readonly("end", &TimingSpec::end)
        .def_property_readonly("is_interval", [](const TimingSpec& t) {
            return t.kind == TimingSpec::Kind::Interval;
        });

    py::class_<WindowOverride>(m, "WindowOverride")
        .def(py::init([](double lo, double hi) { return WindowOverride{lo, hi}; }),
             py::arg("lo"), py::arg("hi"))
        .def_readwrite("lo", &WindowOverride::lo)
        .def_readwrite("hi", &WindowOverride::hi);

    py::class_<TauOverride>(m, "TauOverride")
        .def(py::init([](double tau_early, double tau_late) {
                 return TauOverride{tau_early, tau_late};
             }),
             py::arg("tau_early"), py::arg("tau_late"))
        .def_readwrite("tau_early", &TauOverride::tau_early)
        .def_readwrite("tau_late", &TauOverride::tau_late);

    py::class_<GroundTruthEvent>(m, "GroundTruthEvent")
        .def(py::init([](std::string event_id, std::string answer, TimingSpec timing,
                         std::optional<WindowOverride> window_override,
                         std::optional<TauOverride> tau_override) {
                 GroundTruthEvent e;
                 e.event_id = std::move(event_id);
                 e.answer = std::move(answer);
                 e.timing = timing;
                 e.window_override = window_override;
                 e.tau_override = tau_override;
                 return e;
             }),
             py::arg("event_id"), py::arg("answer"), py::arg("timing"),
             py::arg("window_override") = std::nullopt,
             py::arg("tau_override") = std::nullopt)
        .def_readwrite("event_id", &GroundTruthEvent::event_id)
        .def_readwrite("answer", &GroundTruthEvent::answer)
        .def_readwrite("timing", &GroundTruthEvent::timing);

    py::class_<GroundTruthSample>(m, "GroundTruthSample")
        .def(py::init([](std::string sample_id, TaskKind task, double video_duration,
                         std::string query, double query_time,
                         std::vector<GroundTruthEvent> events) {
                 GroundTruthSample s;
                 s.sample_id = std::move(sample_id);
                 s.task = task;
                 s.video_duration = video_duration;
                 s.query = std::move(query);
                 s.query_time = query_time;
                 s.events = std::move(events);
                 validate(s);
                 return s;
             }),
             py::arg("sample_id"), py::arg("task"), py::arg("video_duration"),
             py::arg("query"), py::arg("query_time"), py::arg("events"))
        .def_readonly("sample_id", &GroundTruthSample::sample_id)
        .def_readonly("task", &GroundTruthSample::task)
        .def_readonly("video_duration", &GroundTruthSample::video_duration)
        .def_readonly("query", &GroundTruthSample::query)
        .def_readonly("query_time", &GroundTruthSample::query_time)
        .def_readonly("events", &GroundTruthSample::events);

    py::enum_<StepToken>(m, "StepToken")
        .value("SILENCE", StepToken::Silence)
        .value("RESPONSE", StepToken::Response);

    py::class_<TrajectoryStep>(m, "TrajectoryStep")
        .def(py::init([](double t, StepToken token, std::optional<std::string> text,
                         std::optional<std::string> raw) {
                 return TrajectoryStep{t, token, std::move(text), std::move(raw)};
             }),
             py::arg("t"), py::arg("token"), py::arg("text") = std::nullopt,
             py::arg("raw") = std::nullopt)
        .def_readonly("t", &TrajectoryStep::t)
        .def_readonly("token", &TrajectoryStep::token)
        .def_readonly("text", &TrajectoryStep::text)
        .def_readonly("raw", &TrajectoryStep::raw);

    py::class_<Trajectory>(m, "Trajectory")
        .def(py::init([](std::string sample_id, std::vector<TrajectoryStep> steps) {
                 Trajectory t;
                 t.sample_id = std::move(sample_id);
                 t.steps = std::move(steps);
                 validate(t);
                 return t;
             }),
             py::arg("sample_id"), py::arg("steps"))
        .def_readonly("sample_id", &Trajectory::sample_id)
        .def_readonly("steps", &Trajectory::steps)
        .def("__len__", [](const Trajectory& t) { return t.steps.size(); });

    py::class_<TimedResponse>(m, "TimedResponse")
        .def(py::init([](double t, std::string text) {
                 return TimedResponse{t, std::move(text)};
             }),
             py::arg("t"), py::arg("text"))
        .def_readonly("t", &TimedResponse::t)
        .def_readonly("text", &TimedResponse::text);

    m.def("responses", &responses, py::arg("trajectory"),
          "Response steps with nonempty text, order preserved.");
    m.def("eligible_responses", &eligible_responses, py::arg("trajectory"),
          py::arg("query_time"));

    // timing
    py::class_<ToleranceSpec>(m, "ToleranceSpec")
        .def(py::init([](double window_lo, double window_hi, double tau_early,
                         double tau_late) {
                 return ToleranceSpec{window_lo, window_hi, tau_early, tau_late};
             }),
             py::arg("window_lo"), py::arg("window_hi"), py::arg("tau_early"),
             py::arg("tau_late"))
        .def_readonly("window_lo", &ToleranceSpec::window_lo)
        .def_readonly("window_hi", &ToleranceSpec::window_hi)
        .def_readonly("tau_early", &ToleranceSpec::tau_early)
        .def_readonly("tau_late", &ToleranceSpec::tau_late);
    m.def("default_tolerance", &default_tolerance, py::arg("task"));
    m.def("time_score", &time_score, py::arg("t_pred"), py::arg("timing"), py::arg("spec"),
          "Linear decay of credit with distance from the optimal response time.");
    m.def("in_window", &in_window, py::arg("t_pred"), py::arg("timing"), py::arg("spec"));

    // judge
    py::enum_<RubricDimension>(m, "RubricDimension")
        .value("GRANULARITY", RubricDimension::Granularity)
        .value("SEQUENCING", RubricDimension::Sequencing)
        .value("COVERAGE", RubricDimension::Coverage);

    py::class_<RubricCheckpoint>(m, "RubricCheckpoint")
        .def(py::init([](int rubric_id, RubricDimension dimension, std::string rubric,
                         std::optional<std::string> stub_keyword) {
                 return RubricCheckpoint{rubric_id, dimension, std::move(rubric),
                                         std::move(stub_keyword)};
             }),
             py::arg("rubric_id"), py::arg("dimension"), py::arg("rubric"),
             py::arg("stub_keyword") = std::nullopt)
        .def_readonly("rubric_id", &RubricCheckpoint::rubric_id)
        .def_readonly("dimension", &RubricCheckpoint::dimension)
        .def_readonly("rubric", &RubricCheckpoint::rubric);

    py::class_<RubricChecklist>(m, "RubricChecklist")
        .def(py::init([](std::string sample_id, std::vector<RubricCheckpoint> checkpoints) {
                 RubricChecklist c;
                 c.sample_id = std::move(sample_id);
                 c.checkpoints = std::move(checkpoints);
                 validate(c);
                 return c;
             }),
             py::arg("sample_id"), py::arg("checkpoints"))
        .def_readonly("sample_id", &RubricChecklist::sample_id)
        .def_readonly("checkpoints", &RubricChecklist::checkpoints);

    py::class_<JudgeHandle>(m, "JudgeHandle")
        .def("score_answer", &JudgeHandle::score_answer, py::arg("question"),
             py::arg("prediction"), py::arg("reference"))
        .def("score_rubric", &JudgeHandle::score_rubric, py::arg("trajectory_rendering"),
             py::arg("checklist"))
        .def_property_readonly("name", &JudgeHandle::name);

    py::class_<StubJudge, JudgeHandle>(m, "StubJudge")
        .def(py::init<>())
        .def("set_answer_score", &StubJudge::set_answer_score, py::arg("prediction"),
             py::arg("reference"), py::arg("score"))
        .def("set_rubric_keyword", &StubJudge::set_rubric_keyword, py::arg("rubric_id"),
             py::arg("keyword"));

    py::class_<IoUJudge, JudgeHandle>(m, "IoUJudge").def(py::init<>());

    py::class_<HttpJudgeOptions>(m, "HttpJudgeOptions")
        .def(py::init<>())
        .def_readwrite("endpoint", &HttpJudgeOptions::endpoint)
        .def_readwrite("model_name", &HttpJudgeOptions::model_name)
        .def_readwrite("credential_env_name", &HttpJudgeOptions::credential_env_name)
        .def_readwrite("max_concurrency", &HttpJudgeOptions::max_concurrency)
        .def_readwrite("timeout_s", &HttpJudgeOptions::timeout_s)
        .def_readwrite("retries", &HttpJudgeOptions::retries)
        .def_readwrite("backoff_ms", &HttpJudgeOptions::backoff_ms);

    py::class_<HttpLlmJudge, JudgeHandle>(m, "HttpLlmJudge")
        .def(py::init<HttpJudgeOptions>(), py::arg("options"));

    m.def(
        "score_iou",
        [](const std::string& pred_text, std::pair<double, double> gt_interval) {
            const auto r = score_iou(pred_text, gt_interval);
            return py::make_tuple(r.value, r.parse_ok);
        },
        py::arg("pred_text"), py::arg("gt_interval"),
        "Returns (iou, parse_ok); unparseable text scores 0 with parse_ok False.");
    m.def("parse_time_interval", &parse_time_interval, py::arg("text"));
    m.def("render_trajectory", &render_trajectory, py::arg("trajectory"));

    // matching
    py::class_<PairScore>(m, "PairScore")
        .def_readonly("event_id", &PairScore::event_id)
        .def_readonly("pred_index", &PairScore::pred_index)
        .def_readonly("s_time", &PairScore::s_time)
        .def_readonly("s_acc", &PairScore::s_acc)
        .def_readonly("s_joint", &PairScore::s_joint)
        .def_readonly("s_additive", &PairScore::s_additive);

    py::class_<MatchResult>(m, "MatchResult")
        .def_readonly("pairs", &MatchResult::pairs)
        .def_readonly("unmatched_preds", &MatchResult::unmatched_preds)
        .def_readonly("unmatched_events", &MatchResult::unmatched_events)
        .def_readonly("iou_parse_failures", &MatchResult::iou_parse_failures);

    m.def(
        "match_prediction_first",
        [](const GroundTruthSample& sample, const std::vector<TimedResponse>& preds,
           JudgeHandle& judge) { return match_prediction_first(sample, preds, judge); },
        py::arg("sample"), py::arg("preds"), py::arg("judge"),
        "Benchmark regime: predictions claim the first containing window; the "
        "highest joint score per event is kept.");
    m.def(
        "match_gt_first_optimal",
        [](const GroundTruthSample& sample, const std::vector<TimedResponse>& preds,
           JudgeHandle& judge, double tau_rl) {
            return match_gt_first_optimal(sample, preds, judge, tau_rl);
        },
        py::arg("sample"), py::arg("preds"), py::arg("judge"), py::arg("tau_rl") = 8.0,
        "RL regime: each event binds the unmatched prediction maximizing the "
        "additive score inside its tolerance window.");

    // metric
    py::class_<SampleScore>(m, "SampleScore")
        .def_readonly("sample_id", &SampleScore::sample_id)
        .def_readonly("task", &SampleScore::task)
        .def_readonly("precision", &SampleScore::precision)
        .def_readonly("recall", &SampleScore::recall)
        .def_readonly("f1", &SampleScore::f1)
        .def_readonly("mean_time", &SampleScore::mean_time)
        .def_readonly("mean_acc", &SampleScore::mean_acc)
        .def_readonly("n_pred", &SampleScore::n_pred)
        .def_readonly("n_gt", &SampleScore::n_gt)
        .def_readonly("pairs", &SampleScore::pairs);

    py::class_<TaskAggregate>(m, "TaskAggregate")
        .def_readonly("time", &TaskAggregate::time)
        .def_readonly("acc", &TaskAggregate::acc)
        .def_readonly("precision", &TaskAggregate::precision)
        .def_readonly("recall", &TaskAggregate::recall)
        .def_readonly("f1", &TaskAggregate::f1)
        .def_readonly("qa_count", &TaskAggregate::qa_count);

    py::class_<SuiteReport>(m, "SuiteReport")
        .def_readonly("per_task", &SuiteReport::per_task)
        .def_readonly("avg_f1", &SuiteReport::avg_f1)
        .def_readonly("weighted_avg_f1", &SuiteReport::weighted_avg_f1);

    m.def(
        "score_sample",
        [](const GroundTruthSample& sample, const Trajectory& traj, JudgeHandle& judge) {
            return score_sample(sample, traj, judge);
        },
        py::arg("sample"), py::arg("trajectory"), py::arg("judge"),
        "Trajectory-level score-weighted precision/recall/F1.");
    m.def("aggregate", &aggregate, py::arg("scores"));
    m.def("suite_report_csv", &suite_report_csv, py::arg("report"));
    m.def("suite_report_markdown", &suite_report_markdown, py::arg("report"));

    // reward
    py::class_<RewardWeights>(m, "RewardWeights")
        .def(py::init([](double w_fmt, double w_turn, double w_traj) {
                 return RewardWeights{w_fmt, w_turn, w_traj};
             }),
             py::arg("w_fmt") = 0.1, py::arg("w_turn") = 0.45, py::arg("w_traj") = 0.45)
        .def_readwrite("w_fmt", &RewardWeights::w_fmt)
        .def_readwrite("w_turn", &RewardWeights::w_turn)
        .def_readwrite("w_traj", &RewardWeights::w_traj);

    py::class_<RewardBreakdown>(m, "RewardBreakdown")
        .def_readonly("r_fmt", &RewardBreakdown::r_fmt)
        .def_readonly("r_turn", &RewardBreakdown::r_turn)
        .def_readonly("r_traj", &RewardBreakdown::r_traj)
        .def_readonly("total", &RewardBreakdown::total)
        .def_readonly("pairs", &RewardBreakdown::pairs)
        .def_readonly("checkpoint_scores", &RewardBreakdown::checkpoint_scores);

    m.def("format_reward", &format_reward, py::arg("trajectory"),
          "Mean per-step structural score over the whole trajectory.");
    m.def(
        "turn_reward",
        [](const GroundTruthSample& sample, const Trajectory& traj, JudgeHandle& judge,
           double tau_rl) { return turn_reward(sample, traj, judge, tau_rl); },
        py::arg("sample"), py::arg("trajectory"), py::arg("judge"), py::arg("tau_rl") = 8.0);
    m.def(
        "trajectory_reward",
        [](const Trajectory& traj, const RubricChecklist& checklist, JudgeHandle& judge) {
            return trajectory_reward(traj, checklist, judge);
        },
        py::arg("trajectory"), py::arg("checklist"), py::arg("judge"));
    m.def(
        "total_reward",
        [](const GroundTruthSample& sample, const Trajectory& traj,
           const RubricChecklist& checklist, JudgeHandle& judge,
           const RewardWeights& weights, double tau_rl) {
            return total_reward(sample, traj, checklist, judge, weights, tau_rl);
        },
        py::arg("sample"), py::arg("trajectory"), py::arg("checklist"), py::arg("judge"),
        py::arg("weights") = RewardWeights{}, py::arg("tau_rl") = 8.0);

    // class-balanced loss
    py::class_<TokenBatchStats>(m, "TokenBatchStats")
        .def(py::init([](std::int64_t n_silence, std::int64_t n_response, double beta,
                         double lambda_text) {
                 return TokenBatchStats{n_silence, n_response, beta, lambda_text};
             }),
             py::arg("n_silence"), py::arg("n_response"), py::arg("beta") = 0.9999,
             py::arg("lambda_text") = 2.0)
        .def_readwrite("n_silence", &TokenBatchStats::n_silence)
        .def_readwrite("n_response", &TokenBatchStats::n_response)
        .def_readwrite("beta", &TokenBatchStats::beta)
        .def_readwrite("lambda_text", &TokenBatchStats::lambda_text);

    py::class_<CbWeights>(m, "CbWeights")
        .def_readonly("w_silence", &CbWeights::w_silence)
        .def_readonly("w_response", &CbWeights::w_response)
        .def_readonly("lambda_text", &CbWeights::lambda_text);

    py::enum_<TokenLabel>(m, "TokenLabel")
        .value("SILENCE", TokenLabel::Silence)
        .value("RESPONSE", TokenLabel::Response)
        .value("TEXT", TokenLabel::Text);

    m.def("effective_number", &effective_number, py::arg("n"), py::arg("beta"),
          "Effective sample size (1 - beta^n) / (1 - beta).");
    m.def("cb_weights", &cb_weights, py::arg("stats"));
    m.def("weighted_loss", &weighted_loss, py::arg("labels"), py::arg("nll"),
          py::arg("weights"));

    // ranking
    py::enum_<Outcome>(m, "Outcome")
        .value("A_WINS", Outcome::AWins)
        .value("B_WINS", Outcome::BWins)
        .value("TIE", Outcome::Tie);

    py::class_<ComparisonRecord>(m, "ComparisonRecord")
        .def(py::init([](std::string model_a, std::string model_b, Outcome outcome) {
                 return ComparisonRecord{std::move(model_a), std::move(model_b), outcome};
             }),
             py::arg("model_a"), py::arg("model_b"), py::arg("outcome"))
        .def_readonly("model_a", &ComparisonRecord::model_a)
        .def_readonly("model_b", &ComparisonRecord::model_b)
        .def_readonly("outcome", &ComparisonRecord::outcome);

    py::class_<BTRanking>(m, "BTRanking")
        .def_readonly("models", &BTRanking::models)
        .def_readonly("strengths", &BTRanking::strengths)
        .def_readonly("ranks", &BTRanking::ranks)
        .def_readonly("stability", &BTRanking::stability)
        .def_readonly("ci", &BTRanking::ci)
        .def_readonly("seed", &BTRanking::seed)
        .def_readonly("n_bootstrap", &BTRanking::n_bootstrap)
        .def_readonly("redraws", &BTRanking::redraws);

    m.def(
        "fit_bt",
        [](const std::vector<ComparisonRecord>& records, double tol, int max_iter) {
            BtOptions options;
            options.tol = tol;
            options.max_iter = max_iter;
            return fit_bt(records, options);
        },
        py::arg("records"), py::arg("tol") = 1e-8, py::arg("max_iter") = 10000,
        "Weighted Bradley-Terry fit; ties count as two half-weight wins.");
    m.def(
        "bootstrap_rank",
        [](const std::vector<ComparisonRecord>& records, int n_bootstrap,
           std::int64_t seed, int workers) {
            return bootstrap_rank(records, n_bootstrap, seed, workers);
        },
        py::arg("records"), py::arg("n_bootstrap") = 1000, py::arg("seed") = 0,
        py::arg("workers") = 1);
    m.def("ranks_from_strengths", &ranks_from_strengths, py::arg("strengths"));
    m.def("spearman", &spearman, py::arg("rank_a"), py::arg("rank_b"));

    // simulation
    py::class_<PolicySpec>(m, "PolicySpec")
        .def_static("oracle", &PolicySpec::oracle)
        .def_static("delayed", &PolicySpec::delayed, py::arg("delta"))
        .def_static("jittered", &PolicySpec::jittered, py::arg("sigma"), py::arg("seed"))
        .def_static("chatty", &PolicySpec::chatty, py::arg("rate"), py::arg("seed"))
        .def_static("dropout", &PolicySpec::dropout, py::arg("p"), py::arg("seed"))
        .def_static("composite", &PolicySpec::composite, py::arg("policies"));
    m.def("simulate", &simulate, py::arg("sample"), py::arg("policy"));
    m.def("parse_offline_transcript", &parse_offline_transcript, py::arg("sample_id"),
          py::arg("per_frame_outputs"),
          "Frames saying exactly 'Wait' become silence; other nonempty emissions "
          "become responses.");

    // io
    m.def("load_ground_truth", &load_ground_truth, py::arg("path"));
    m.def(
        "load_trajectories",
        [](const std::string& path) {
            std::vector<std::pair<Trajectory, std::int64_t>> out;
            for (auto& rec : load_trajectories(path)) {
                out.emplace_back(std::move(rec.trajectory), rec.rollout_id);
            }
            return out;
        },
        py::arg("path"), "Returns (trajectory, rollout_id) pairs.");
    m.def("load_checklists", &load_checklists, py::arg("path"));
    m.def("load_comparisons", &load_comparisons, py::arg("path"));

    // prompt assets
    m.def("system_prompt", [] { return std::string(system_prompt()); });
    m.def("offline_decision_prompt", [] { return std::string(offline_decision_prompt()); });
    m.def("rubric_generation_prompt", [] { return std::string(rubric_generation_prompt()); });
    m.def("open_ended_eval_prompt", [] { return std::string(open_ended_eval_prompt()); });
    m.def("rubric_eval_prompt", [] { return std::string(rubric_eval_prompt()); });
}
