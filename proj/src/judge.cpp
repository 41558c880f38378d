#include "streameval/judge.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <regex>
#include <sstream>

#include "streameval/errors.hpp"

namespace streameval {

std::string to_string(RubricDimension dim) {
    switch (dim) {
        case RubricDimension::Granularity: return "granularity";
        case RubricDimension::Sequencing: return "sequencing";
        case RubricDimension::Coverage: return "coverage";
    }
    throw InputError("unknown RubricDimension value");
}

RubricDimension rubric_dimension_from_string(const std::string& name) {
    if (name == "granularity") return RubricDimension::Granularity;
    if (name == "sequencing" || name == "coherence") return RubricDimension::Sequencing;
    if (name == "coverage") return RubricDimension::Coverage;
    throw InputError("unknown rubric dimension: '" + name + "'");
}

void validate(const RubricChecklist& checklist) {
    if (checklist.sample_id.empty()) {
        throw InputError("checklist sample_id must be nonempty");
    }
    if (checklist.checkpoints.empty()) {
        throw InputError("checklist '" + checklist.sample_id +
                         "': checkpoints must be nonempty");
    }
}

std::string StubJudge::normalize(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    bool pending_space = false;
    for (unsigned char c : text) {
        if (std::isspace(c)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        out.push_back(static_cast<char>(std::tolower(c)));
    }
    return out;
}

double StubJudge::score_answer(const std::string&, const std::string& prediction,
                               const std::string& reference) {
    if (reference.empty()) throw InputError("score_answer: reference must be nonempty");
    const std::string pred = normalize(prediction);
    const std::string ref = normalize(reference);
    if (pred == ref) return 1.0;
    auto it = answer_table_.find({pred, ref});
    if (it != answer_table_.end()) return it->second;
    return 0.0;
}

namespace {

bool contains_ci(const std::string& haystack, const std::string& needle) {
    if (needle.empty()) return false;
    auto it = std::search(haystack.begin(), haystack.end(), needle.begin(), needle.end(),
                          [](unsigned char a, unsigned char b) {
                              return std::tolower(a) == std::tolower(b);
                          });
    return it != haystack.end();
}

}  // namespace

std::vector<int> StubJudge::score_rubric(const std::string& trajectory_rendering,
                                         const RubricChecklist& checklist) {
    validate(checklist);
    std::vector<int> out;
    out.reserve(checklist.checkpoints.size());
    for (const auto& cp : checklist.checkpoints) {
        std::string keyword;
        if (cp.stub_keyword) {
            keyword = *cp.stub_keyword;
        } else if (auto it = rubric_keywords_.find(cp.rubric_id);
                   it != rubric_keywords_.end()) {
            keyword = it->second;
        }
        out.push_back(contains_ci(trajectory_rendering, keyword) ? 1 : 0);
    }
    return out;
}

void StubJudge::set_answer_score(const std::string& prediction,
                                 const std::string& reference, double score) {
    if (score < 0.0 || score > 1.0) {
        throw ConfigError("stub answer score must lie in [0,1]");
    }
    answer_table_[{normalize(prediction), normalize(reference)}] = score;
}

void StubJudge::set_rubric_keyword(int rubric_id, const std::string& keyword) {
    rubric_keywords_[rubric_id] = keyword;
}

std::optional<std::pair<double, double>> parse_time_interval(const std::string& text) {
    static const std::regex kRangeForm(
        R"(^\s*([0-9]+(?:\.[0-9]+)?)\s*s?\s*(?:-|–|to)\s*([0-9]+(?:\.[0-9]+)?)\s*s?\s*$)",
        std::regex::icase);
    static const std::regex kBarePair(
        R"(^\s*([0-9]+(?:\.[0-9]+)?)\s*s?[\s,]+([0-9]+(?:\.[0-9]+)?)\s*s?\s*$)",
        std::regex::icase);

    std::smatch m;
    if (!std::regex_match(text, m, kRangeForm) && !std::regex_match(text, m, kBarePair)) {
        return std::nullopt;
    }
    const double a = std::stod(m[1].str());
    const double b = std::stod(m[2].str());
    if (a > b) return std::nullopt;
    return std::make_pair(a, b);
}

IouResult score_iou(const std::string& pred_text,
                    std::pair<double, double> gt_interval) {
    auto parsed = parse_time_interval(pred_text);
    if (!parsed) return {0.0, false};
    const auto [ps, pe] = *parsed;
    const auto [gs, ge] = gt_interval;
    const double inter = std::max(0.0, std::min(pe, ge) - std::max(ps, gs));
    const double uni = std::max(pe, ge) - std::min(ps, gs);
    if (uni <= 0.0) {
        // both degenerate points; full credit only when they coincide
        return {ps == gs ? 1.0 : 0.0, true};
    }
    return {inter / uni, true};
}

double IoUJudge::score_answer(const std::string&, const std::string& prediction,
                              const std::string& reference) {
    if (reference.empty()) throw InputError("score_answer: reference must be nonempty");
    auto gt = parse_time_interval(reference);
    if (!gt) {
        throw InputError("IoU judge: ground-truth interval is unparseable: '" +
                         reference + "'");
    }
    return score_iou(prediction, *gt).value;
}

std::vector<int> IoUJudge::score_rubric(const std::string&, const RubricChecklist&) {
    throw ConfigError("IoU judge cannot score rubrics");
}

AccuracyScore accuracy_score(const GroundTruthSample& sample,
                             const GroundTruthEvent& event,
                             const std::string& pred_text, JudgeHandle& judge) {
    if (sample.task == TaskKind::TemporalGrounding) {
        auto gt = parse_time_interval(event.answer);
        if (!gt) {
            throw InputError("sample '" + sample.sample_id + "' event '" +
                             event.event_id +
                             "': temporal grounding answer is not an interval: '" +
                             event.answer + "'");
        }
        IouResult r = score_iou(pred_text, *gt);
        return {r.value, !r.parse_ok};
    }
    return {judge.score_answer(sample.query, pred_text, event.answer), false};
}

std::string format_seconds(double t) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", t);
    return buf;
}

std::string render_trajectory(const Trajectory& traj) {
    std::ostringstream out;
    for (const auto& r : responses(traj)) {
        out << "[" << format_seconds(r.t) << " s] " << r.text << "\n";
    }
    return out.str();
}

}  // namespace streameval
