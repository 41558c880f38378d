#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace streameval {

enum class Outcome { AWins, BWins, Tie };

std::string to_string(Outcome outcome);
Outcome outcome_from_string(const std::string& name);

struct ComparisonRecord {
    std::string model_a;
    std::string model_b;
    Outcome outcome = Outcome::Tie;
};

struct BtOptions {
    double tol = 1e-8;
    int max_iter = 10000;
    // Tiny symmetric pseudo-weight per ordered pair so the maximum-likelihood
    // estimate stays finite when one model never loses. Preserves label
    // symmetry and tie symmetry exactly.
    double prior_weight = 1e-6;
};

// Weighted Bradley-Terry fit by minorization-maximization. Ties expand into
// two 0.5-weighted wins, one per direction. Returns centered log-strengths
// (sum 0). Throws on a disconnected comparison graph (naming the components)
// or non-convergence (naming the iteration count).
std::map<std::string, double> fit_bt(const std::vector<ComparisonRecord>& records,
                                     const BtOptions& options = {});

struct BTRanking {
    std::vector<std::string> models;  // sorted; row order of `stability`
    std::map<std::string, double> strengths;  // centered theta, full-data fit
    std::map<std::string, int> ranks;         // 1 = strongest, full-data fit
    // stability[m][r] = frequency of models[m] occupying rank r+1 across
    // bootstrap refits; each row sums to 1.
    std::vector<std::vector<double>> stability;
    std::map<std::string, std::pair<double, double>> ci;  // 2.5 / 97.5 percentiles
    std::int64_t seed = 0;
    int n_bootstrap = 0;
    int redraws = 0;  // resamples redrawn because their graph was disconnected
};

// Bootstrap resampling with replacement under a seeded deterministic
// generator; replicate r draws from substream (seed, r), so results are
// identical for any worker count. A resample whose comparison graph is
// disconnected is redrawn, up to 100 times per replicate.
BTRanking bootstrap_rank(const std::vector<ComparisonRecord>& records,
                         int n_bootstrap, std::int64_t seed, int workers = 1,
                         const BtOptions& options = {});

// Ranks models by descending theta; ties broken by model name for determinism.
std::map<std::string, int> ranks_from_strengths(
    const std::map<std::string, double>& strengths);

// Spearman rank correlation over a shared model set, average-rank tie
// handling. Throws on mismatched model sets.
double spearman(const std::map<std::string, int>& rank_a,
                const std::map<std::string, int>& rank_b);

}  // namespace streameval
