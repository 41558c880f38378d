#pragma once

#include <string>
#include <vector>

#include "streameval/metric.hpp"

namespace streameval {

// Tabular emission of suite results. Values are percentages at one decimal
// place; byte-stable given identical inputs.
std::string suite_report_csv(const SuiteReport& report);
std::string suite_report_markdown(const SuiteReport& report);

// Dimension-grouped summary: one row per labeled run, columns Time/Acc/F1 for
// perception understanding (EU, OU, AA), temporal reasoning (TP, TG) and
// proactive agency (GP, RF), plus overall Avg / W-Avg F1. Dimension cells are
// QA-count-weighted means of the per-task values.
struct LabeledScores {
    std::string label;
    std::vector<SampleScore> scores;
};

std::string dimension_report_markdown(const std::vector<LabeledScores>& runs);

std::string stability_csv(const std::vector<std::string>& models,
                          const std::vector<std::vector<double>>& stability);

}  // namespace streameval
