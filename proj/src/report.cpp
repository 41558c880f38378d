#include "streameval/report.hpp"

#include <array>
#include <cstdio>
#include <sstream>

#include "streameval/errors.hpp"

namespace streameval {

namespace {

std::string pct(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f", value * 100.0);
    return buf;
}

struct DimensionSpec {
    const char* label;
    std::vector<TaskKind> tasks;
};

const std::array<DimensionSpec, 3>& dimensions() {
    static const std::array<DimensionSpec, 3> kDims = {{
        {"PU", {TaskKind::EventUnderstanding, TaskKind::ObjectUnderstanding,
                TaskKind::AnomalyAlert}},
        {"TR", {TaskKind::TemporalPerception, TaskKind::TemporalGrounding}},
        {"PA", {TaskKind::GoalPlanning, TaskKind::RiskForecasting}},
    }};
    return kDims;
}

struct DimensionCell {
    double time = 0.0, acc = 0.0, f1 = 0.0;
    bool present = false;
};

DimensionCell dimension_cell(const SuiteReport& report,
                             const std::vector<TaskKind>& tasks) {
    DimensionCell cell;
    double weight = 0.0;
    for (TaskKind task : tasks) {
        auto it = report.per_task.find(task);
        if (it == report.per_task.end()) continue;
        const auto& agg = it->second;
        cell.time += agg.time * agg.qa_count;
        cell.acc += agg.acc * agg.qa_count;
        cell.f1 += agg.f1 * agg.qa_count;
        weight += agg.qa_count;
    }
    if (weight > 0.0) {
        cell.time /= weight;
        cell.acc /= weight;
        cell.f1 /= weight;
        cell.present = true;
    }
    return cell;
}

}  // namespace

std::string suite_report_csv(const SuiteReport& report) {
    std::ostringstream out;
    out << "task,time,acc,precision,recall,f1,qa_count\n";
    for (const auto& [task, agg] : report.per_task) {
        out << to_string(task) << "," << pct(agg.time) << "," << pct(agg.acc) << ","
            << pct(agg.precision) << "," << pct(agg.recall) << "," << pct(agg.f1)
            << "," << agg.qa_count << "\n";
    }
    out << "avg,,,,," << pct(report.avg_f1) << ",\n";
    out << "weighted_avg,,,,," << pct(report.weighted_avg_f1) << ",\n";
    return out.str();
}

std::string suite_report_markdown(const SuiteReport& report) {
    std::ostringstream out;
    out << "| Task | Time | Acc. | Prec. | Rec. | F1 | QA |\n";
    out << "|---|---|---|---|---|---|---|\n";
    for (const auto& [task, agg] : report.per_task) {
        out << "| " << to_string(task) << " | " << pct(agg.time) << " | "
            << pct(agg.acc) << " | " << pct(agg.precision) << " | " << pct(agg.recall)
            << " | " << pct(agg.f1) << " | " << agg.qa_count << " |\n";
    }
    out << "| Avg. | | | | | " << pct(report.avg_f1) << " | |\n";
    out << "| W-Avg. | | | | | " << pct(report.weighted_avg_f1) << " | |\n";
    return out.str();
}

std::string dimension_report_markdown(const std::vector<LabeledScores>& runs) {
    if (runs.empty()) throw InputError("dimension report: no runs given");
    std::ostringstream out;
    out << "| Run ";
    for (const auto& dim : dimensions()) {
        out << "| " << dim.label << " Time | " << dim.label << " Acc. | " << dim.label
            << " F1 ";
    }
    out << "| Avg. | W-Avg. |\n";
    out << "|---";
    for (std::size_t i = 0; i < dimensions().size() * 3 + 2; ++i) out << "|---";
    out << "|\n";
    for (const auto& run : runs) {
        const SuiteReport report = aggregate(run.scores);
        out << "| " << run.label << " ";
        for (const auto& dim : dimensions()) {
            const DimensionCell cell = dimension_cell(report, dim.tasks);
            if (cell.present) {
                out << "| " << pct(cell.time) << " | " << pct(cell.acc) << " | "
                    << pct(cell.f1) << " ";
            } else {
                out << "| - | - | - ";
            }
        }
        out << "| " << pct(report.avg_f1) << " | " << pct(report.weighted_avg_f1)
            << " |\n";
    }
    return out.str();
}

std::string stability_csv(const std::vector<std::string>& models,
                          const std::vector<std::vector<double>>& stability) {
    if (models.size() != stability.size()) {
        throw InputError("stability matrix row count does not match model count");
    }
    std::ostringstream out;
    out << "model";
    for (std::size_t r = 1; r <= models.size(); ++r) out << ",rank" << r;
    out << "\n";
    for (std::size_t m = 0; m < models.size(); ++m) {
        out << models[m];
        char buf[32];
        for (double cell : stability[m]) {
            std::snprintf(buf, sizeof(buf), "%.6f", cell);
            out << "," << buf;
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace streameval
