#include "streameval/ranking.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include "streameval/errors.hpp"
#include "streameval/rng.hpp"

namespace streameval {

std::string to_string(Outcome outcome) {
    switch (outcome) {
        case Outcome::AWins: return "a_wins";
        case Outcome::BWins: return "b_wins";
        case Outcome::Tie: return "tie";
    }
    throw InputError("unknown Outcome value");
}

Outcome outcome_from_string(const std::string& name) {
    if (name == "a_wins") return Outcome::AWins;
    if (name == "b_wins") return Outcome::BWins;
    if (name == "tie") return Outcome::Tie;
    throw InputError("unknown outcome: '" + name + "'");
}

namespace {

struct BtProblem {
    std::vector<std::string> models;            // sorted
    std::vector<std::vector<double>> win_weight;  // [winner][loser]
};

std::vector<std::string> collect_models(const std::vector<ComparisonRecord>& records) {
    std::set<std::string> names;
    for (const auto& r : records) {
        if (r.model_a == r.model_b) {
            throw InputError("comparison of model '" + r.model_a + "' with itself");
        }
        names.insert(r.model_a);
        names.insert(r.model_b);
    }
    if (names.size() < 2) {
        throw InputError("need comparisons between at least two models");
    }
    return {names.begin(), names.end()};
}

// Each tie becomes two 0.5-weighted wins, one per direction, preserving the
// total observation weight of 1 per record.
BtProblem build_problem(const std::vector<ComparisonRecord>& records,
                        const std::vector<std::string>& models) {
    BtProblem problem;
    problem.models = models;
    const std::size_t m = models.size();
    problem.win_weight.assign(m, std::vector<double>(m, 0.0));
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < m; ++i) index[models[i]] = i;
    for (const auto& r : records) {
        const std::size_t a = index.at(r.model_a);
        const std::size_t b = index.at(r.model_b);
        switch (r.outcome) {
            case Outcome::AWins: problem.win_weight[a][b] += 1.0; break;
            case Outcome::BWins: problem.win_weight[b][a] += 1.0; break;
            case Outcome::Tie:
                problem.win_weight[a][b] += 0.5;
                problem.win_weight[b][a] += 0.5;
                break;
        }
    }
    return problem;
}

void check_connected(const std::vector<ComparisonRecord>& records,
                     const std::vector<std::string>& models) {
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < models.size(); ++i) index[models[i]] = i;
    std::vector<std::size_t> parent(models.size());
    std::iota(parent.begin(), parent.end(), 0);
    const auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& r : records) {
        parent[find(index.at(r.model_a))] = find(index.at(r.model_b));
    }
    std::map<std::size_t, std::vector<std::string>> components;
    for (std::size_t i = 0; i < models.size(); ++i) {
        components[find(i)].push_back(models[i]);
    }
    if (components.size() > 1) {
        std::ostringstream msg;
        msg << "comparison graph is disconnected; components:";
        for (const auto& [root, members] : components) {
            msg << " {";
            for (std::size_t i = 0; i < members.size(); ++i) {
                msg << (i ? ", " : "") << members[i];
            }
            msg << "}";
        }
        throw InputError(msg.str());
    }
}

double log_sigmoid_sum(double a, double b) {
    // log(exp(a) + exp(b)), stable
    const double hi = std::max(a, b);
    return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

double log_likelihood(const std::vector<std::vector<double>>& w,
                      const std::vector<double>& theta) {
    double ll = 0.0;
    const std::size_t m = theta.size();
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            if (i == j || w[i][j] == 0.0) continue;
            ll += w[i][j] * (theta[i] - log_sigmoid_sum(theta[i], theta[j]));
        }
    }
    return ll;
}

std::vector<double> centered(std::vector<double> theta) {
    const double mean = std::accumulate(theta.begin(), theta.end(), 0.0) /
                        static_cast<double>(theta.size());
    for (double& t : theta) t -= mean;
    return theta;
}

// Maximizes the weighted likelihood. Zermelo/MM sweeps do the bulk of the
// work (monotone, no step size); when the data is nearly degenerate (a
// bootstrap resample can lose every tie) MM's linear rate collapses, so the
// tail runs damped Newton on the same likelihood with theta_0 pinned as the
// gauge. Both phases share the tol on max |delta theta|.
std::vector<double> solve_mle(const BtProblem& problem, const BtOptions& options) {
    const std::size_t m = problem.models.size();
    std::vector<std::vector<double>> w = problem.win_weight;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            if (i != j) w[i][j] += options.prior_weight;
        }
    }
    std::vector<double> total_wins(m, 0.0);
    std::vector<std::vector<double>> pair_total(m, std::vector<double>(m, 0.0));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            if (i == j) continue;
            total_wins[i] += w[i][j];
            pair_total[i][j] = w[i][j] + w[j][i];
        }
    }

    const int mm_budget = std::min(options.max_iter, 500);
    std::vector<double> gamma(m, 1.0), next(m, 0.0);
    int used_iters = 0;
    for (; used_iters < mm_budget; ++used_iters) {
        for (std::size_t i = 0; i < m; ++i) {
            double denom = 0.0;
            for (std::size_t j = 0; j < m; ++j) {
                if (j != i) denom += pair_total[i][j] / (gamma[i] + gamma[j]);
            }
            next[i] = total_wins[i] / denom;
        }
        double log_sum = 0.0;
        for (double g : next) log_sum += std::log(g);
        const double scale = std::exp(log_sum / static_cast<double>(m));
        double max_change = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            next[i] /= scale;
            max_change = std::max(max_change, std::abs(std::log(next[i]) - std::log(gamma[i])));
        }
        gamma.swap(next);
        if (max_change < options.tol) {
            std::vector<double> theta(m);
            for (std::size_t i = 0; i < m; ++i) theta[i] = std::log(gamma[i]);
            return centered(theta);
        }
    }

    // Newton phase. Gauge: theta[0] = 0, variables are theta[1..m-1].
    std::vector<double> theta(m);
    for (std::size_t i = 0; i < m; ++i) theta[i] = std::log(gamma[i]) - std::log(gamma[0]);
    double ll = log_likelihood(w, theta);
    const std::size_t dim = m - 1;
    std::vector<std::vector<double>> a(dim, std::vector<double>(dim + 1, 0.0));
    for (; used_iters < options.max_iter; ++used_iters) {
        // gradient and negated Hessian over the reduced variables
        for (auto& row : a) std::fill(row.begin(), row.end(), 0.0);
        for (std::size_t i = 1; i < m; ++i) {
            double grad = total_wins[i];
            for (std::size_t j = 0; j < m; ++j) {
                if (j == i || pair_total[i][j] == 0.0) continue;
                const double p = 1.0 / (1.0 + std::exp(theta[j] - theta[i]));
                const double curvature = pair_total[i][j] * p * (1.0 - p);
                grad -= pair_total[i][j] * p;
                a[i - 1][i - 1] += curvature;
                if (j >= 1) a[i - 1][j - 1] -= curvature;
            }
            a[i - 1][dim] = grad;
        }
        // Gaussian elimination with partial pivoting
        for (std::size_t col = 0; col < dim; ++col) {
            std::size_t pivot = col;
            for (std::size_t row = col + 1; row < dim; ++row) {
                if (std::abs(a[row][col]) > std::abs(a[pivot][col])) pivot = row;
            }
            std::swap(a[col], a[pivot]);
            if (a[col][col] == 0.0) {
                throw InputError("Bradley-Terry fit: singular system");
            }
            for (std::size_t row = col + 1; row < dim; ++row) {
                const double f = a[row][col] / a[col][col];
                for (std::size_t k = col; k <= dim; ++k) a[row][k] -= f * a[col][k];
            }
        }
        std::vector<double> step(dim, 0.0);
        for (std::size_t row = dim; row-- > 0;) {
            double value = a[row][dim];
            for (std::size_t k = row + 1; k < dim; ++k) value -= a[row][k] * step[k];
            step[row] = value / a[row][row];
        }

        // backtracking line search on the likelihood
        double alpha = 1.0;
        std::vector<double> candidate(m, 0.0);
        double candidate_ll = -std::numeric_limits<double>::infinity();
        for (int halvings = 0; halvings < 60; ++halvings) {
            for (std::size_t i = 1; i < m; ++i) candidate[i] = theta[i] + alpha * step[i - 1];
            candidate_ll = log_likelihood(w, candidate);
            if (candidate_ll >= ll) break;
            alpha /= 2.0;
        }
        double max_change = 0.0;
        for (std::size_t i = 1; i < m; ++i) {
            max_change = std::max(max_change, std::abs(alpha * step[i - 1]));
        }
        theta = candidate;
        ll = candidate_ll;
        if (max_change < options.tol) {
            return centered(theta);
        }
    }
    throw InputError("Bradley-Terry fit did not converge within " +
                     std::to_string(options.max_iter) + " iterations");
}

std::vector<double> fit_theta(const std::vector<ComparisonRecord>& records,
                              const std::vector<std::string>& models,
                              const BtOptions& options) {
    check_connected(records, models);
    return solve_mle(build_problem(records, models), options);
}

// rank positions (0-based) by descending theta, name ascending on ties
std::vector<std::size_t> rank_order(const std::vector<double>& theta,
                                    const std::vector<std::string>& models) {
    std::vector<std::size_t> order(theta.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (theta[a] != theta[b]) return theta[a] > theta[b];
        return models[a] < models[b];
    });
    return order;
}

}  // namespace

std::map<std::string, double> fit_bt(const std::vector<ComparisonRecord>& records,
                                     const BtOptions& options) {
    const auto models = collect_models(records);
    const auto theta = fit_theta(records, models, options);
    std::map<std::string, double> strengths;
    for (std::size_t i = 0; i < models.size(); ++i) strengths[models[i]] = theta[i];
    return strengths;
}

std::map<std::string, int> ranks_from_strengths(
    const std::map<std::string, double>& strengths) {
    std::vector<std::string> models;
    std::vector<double> theta;
    for (const auto& [name, value] : strengths) {
        models.push_back(name);
        theta.push_back(value);
    }
    const auto order = rank_order(theta, models);
    std::map<std::string, int> ranks;
    for (std::size_t r = 0; r < order.size(); ++r) {
        ranks[models[order[r]]] = static_cast<int>(r) + 1;
    }
    return ranks;
}

BTRanking bootstrap_rank(const std::vector<ComparisonRecord>& records,
                         int n_bootstrap, std::int64_t seed, int workers,
                         const BtOptions& options) {
    if (n_bootstrap < 1) throw ConfigError("n_bootstrap must be >= 1");
    if (workers < 1) throw ConfigError("workers must be >= 1");

    const auto models = collect_models(records);
    const std::size_t m = models.size();
    const auto full_theta = fit_theta(records, models, options);

    BTRanking ranking;
    ranking.models = models;
    ranking.seed = seed;
    ranking.n_bootstrap = n_bootstrap;
    for (std::size_t i = 0; i < m; ++i) ranking.strengths[models[i]] = full_theta[i];
    ranking.ranks = ranks_from_strengths(ranking.strengths);

    constexpr int kMaxRedraws = 100;
    std::vector<std::vector<double>> replicate_theta(n_bootstrap);
    std::vector<int> replicate_redraws(n_bootstrap, 0);
    std::vector<std::string> replicate_error(n_bootstrap);

    const auto run_replicate = [&](int r) {
        DetRng rng(static_cast<std::uint64_t>(seed), static_cast<std::uint64_t>(r));
        std::vector<ComparisonRecord> resample(records.size());
        for (int attempt = 0; attempt <= kMaxRedraws; ++attempt) {
            for (auto& slot : resample) {
                slot = records[rng.bounded(records.size())];
            }
            const auto sub_models = collect_models(resample);
            // A resample that dropped a model entirely counts as disconnected
            // for rank-stability purposes; every replicate must rank all models.
            if (sub_models.size() != m) {
                replicate_redraws[r] += 1;
                continue;
            }
            try {
                check_connected(resample, sub_models);
            } catch (const InputError&) {
                replicate_redraws[r] += 1;
                continue;
            }
            replicate_theta[r] = solve_mle(build_problem(resample, sub_models), options);
            return;
        }
        replicate_error[r] = "bootstrap replicate " + std::to_string(r) + " drew " +
                             std::to_string(kMaxRedraws) +
                             " disconnected resamples in a row";
    };

    if (workers == 1) {
        for (int r = 0; r < n_bootstrap; ++r) run_replicate(r);
    } else {
        std::vector<std::thread> pool;
        std::atomic<int> next_index{0};
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    const int r = next_index.fetch_add(1);
                    if (r >= n_bootstrap) return;
                    run_replicate(r);
                }
            });
        }
        for (auto& t : pool) t.join();
    }

    for (int r = 0; r < n_bootstrap; ++r) {
        if (!replicate_error[r].empty()) throw InputError(replicate_error[r]);
        ranking.redraws += replicate_redraws[r];
    }

    // aggregate in replicate order: identical results for any worker count
    ranking.stability.assign(m, std::vector<double>(m, 0.0));
    std::vector<std::vector<double>> theta_samples(m);
    for (int r = 0; r < n_bootstrap; ++r) {
        const auto& theta = replicate_theta[r];
        const auto order = rank_order(theta, models);
        for (std::size_t pos = 0; pos < order.size(); ++pos) {
            ranking.stability[order[pos]][pos] += 1.0;
        }
        for (std::size_t i = 0; i < m; ++i) theta_samples[i].push_back(theta[i]);
    }
    for (auto& row : ranking.stability) {
        for (double& cell : row) cell /= static_cast<double>(n_bootstrap);
    }
    const auto percentile = [](std::vector<double>& values, double q) {
        std::sort(values.begin(), values.end());
        const double pos = q * static_cast<double>(values.size() - 1);
        const auto lo = static_cast<std::size_t>(pos);
        const std::size_t hi = std::min(lo + 1, values.size() - 1);
        const double frac = pos - static_cast<double>(lo);
        return values[lo] * (1.0 - frac) + values[hi] * frac;
    };
    for (std::size_t i = 0; i < m; ++i) {
        auto& samples = theta_samples[i];
        ranking.ci[models[i]] = {percentile(samples, 0.025), percentile(samples, 0.975)};
    }
    return ranking;
}

double spearman(const std::map<std::string, int>& rank_a,
                const std::map<std::string, int>& rank_b) {
    if (rank_a.size() != rank_b.size()) {
        throw InputError("spearman: rankings cover different model sets");
    }
    for (const auto& [name, value] : rank_a) {
        if (!rank_b.contains(name)) {
            throw InputError("spearman: model '" + name + "' missing from one ranking");
        }
    }
    // convert to fractional ranks (ties -> average of occupied positions)
    const auto fractional = [](const std::map<std::string, int>& ranks) {
        std::vector<std::pair<int, std::string>> items;
        for (const auto& [name, value] : ranks) items.emplace_back(value, name);
        std::sort(items.begin(), items.end());
        std::map<std::string, double> out;
        std::size_t i = 0;
        while (i < items.size()) {
            std::size_t j = i;
            while (j < items.size() && items[j].first == items[i].first) ++j;
            const double avg = (static_cast<double>(i) + static_cast<double>(j - 1)) / 2.0 + 1.0;
            for (std::size_t k = i; k < j; ++k) out[items[k].second] = avg;
            i = j;
        }
        return out;
    };
    const auto fa = fractional(rank_a);
    const auto fb = fractional(rank_b);
    const double n = static_cast<double>(fa.size());
    double mean_a = 0.0, mean_b = 0.0;
    for (const auto& [name, value] : fa) mean_a += value;
    for (const auto& [name, value] : fb) mean_b += value;
    mean_a /= n;
    mean_b /= n;
    double cov = 0.0, var_a = 0.0, var_b = 0.0;
    for (const auto& [name, a] : fa) {
        const double da = a - mean_a;
        const double db = fb.at(name) - mean_b;
        cov += da * db;
        var_a += da * da;
        var_b += db * db;
    }
    if (var_a == 0.0 || var_b == 0.0) {
        throw InputError("spearman: a ranking is constant; correlation undefined");
    }
    return cov / std::sqrt(var_a * var_b);
}

}  // namespace streameval
