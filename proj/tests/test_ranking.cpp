#include <doctest.h>

#include <cmath>

#include "streameval/errors.hpp"
#include "streameval/ranking.hpp"
#include "streameval/rng.hpp"

using namespace streameval;

namespace {

std::vector<ComparisonRecord> repeat(const std::string& a, const std::string& b,
                                     Outcome outcome, int n) {
    std::vector<ComparisonRecord> out;
    for (int i = 0; i < n; ++i) out.push_back({a, b, outcome});
    return out;
}

// samples comparisons from planted strengths under the Bradley-Terry model
std::vector<ComparisonRecord> sample_comparisons(const std::vector<std::string>& models,
                                                 const std::vector<double>& theta,
                                                 int count, DetRng& rng) {
    std::vector<ComparisonRecord> out;
    for (int i = 0; i < count; ++i) {
        const auto a = rng.bounded(models.size());
        auto b = rng.bounded(models.size() - 1);
        if (b >= a) ++b;
        const double p = 1.0 / (1.0 + std::exp(theta[b] - theta[a]));
        out.push_back({models[a], models[b],
                       rng.uniform() < p ? Outcome::AWins : Outcome::BWins});
    }
    return out;
}

}  // namespace

TEST_CASE("dominance orders strengths") {
    const auto strengths = fit_bt(repeat("alpha", "beta", Outcome::AWins, 5));
    CHECK(strengths.at("alpha") > strengths.at("beta"));
    const double sum = strengths.at("alpha") + strengths.at("beta");
    CHECK(std::abs(sum) < 1e-9);
}

TEST_CASE("all ties give equal strengths") {
    auto records = repeat("a", "b", Outcome::Tie, 6);
    auto more = repeat("b", "c", Outcome::Tie, 6);
    records.insert(records.end(), more.begin(), more.end());
    auto cross = repeat("a", "c", Outcome::Tie, 6);
    records.insert(records.end(), cross.begin(), cross.end());
    const auto strengths = fit_bt(records);
    for (const auto& [m1, t1] : strengths) {
        for (const auto& [m2, t2] : strengths) {
            CHECK(std::abs(t1 - t2) < 1e-6);
        }
    }
}

TEST_CASE("tie expansion preserves label symmetry") {
    std::vector<ComparisonRecord> records = {
        {"a", "b", Outcome::AWins}, {"a", "b", Outcome::Tie}, {"a", "b", Outcome::BWins},
        {"a", "b", Outcome::AWins},
    };
    std::vector<ComparisonRecord> flipped;
    for (const auto& r : records) {
        Outcome o = r.outcome == Outcome::AWins  ? Outcome::BWins
                    : r.outcome == Outcome::BWins ? Outcome::AWins
                                                  : Outcome::Tie;
        flipped.push_back({r.model_b, r.model_a, o});
    }
    const auto s1 = fit_bt(records);
    const auto s2 = fit_bt(flipped);
    CHECK(s1.at("a") == doctest::Approx(s2.at("a")).epsilon(1e-10));
    CHECK(s1.at("b") == doctest::Approx(s2.at("b")).epsilon(1e-10));
}

TEST_CASE("planted ordering is recovered") {
    const std::vector<std::string> models = {"m1", "m2", "m3"};
    const std::vector<double> theta = {1.0, 0.0, -1.0};
    int recovered = 0;
    for (int seed = 0; seed < 20; ++seed) {
        DetRng rng(seed);
        const auto records = sample_comparisons(models, theta, 2000, rng);
        const auto strengths = fit_bt(records);
        if (strengths.at("m1") > strengths.at("m2") &&
            strengths.at("m2") > strengths.at("m3")) {
            ++recovered;
        }
    }
    CHECK(recovered == 20);
}

TEST_CASE("disconnected comparison graphs are rejected with components named") {
    std::vector<ComparisonRecord> records = {{"a", "b", Outcome::AWins},
                                             {"c", "d", Outcome::Tie}};
    try {
        fit_bt(records);
        FAIL("expected InputError");
    } catch (const InputError& e) {
        const std::string what = e.what();
        CHECK(what.find("disconnected") != std::string::npos);
        CHECK(what.find("a") != std::string::npos);
        CHECK(what.find("c") != std::string::npos);
    }
}

TEST_CASE("self-comparisons are rejected") {
    CHECK_THROWS_AS(fit_bt({{"a", "a", Outcome::Tie}}), InputError);
}

TEST_CASE("bootstrap is deterministic and stable for a dominant model") {
    const auto records = repeat("winner", "loser", Outcome::AWins, 30);
    const auto r1 = bootstrap_rank(records, 50, 7);
    const auto r2 = bootstrap_rank(records, 50, 7);
    CHECK(r1.strengths == r2.strengths);
    CHECK(r1.stability == r2.stability);
    CHECK(r1.ci == r2.ci);
    CHECK(r1.ranks.at("winner") == 1);
    CHECK(r1.stability[1][0] == 1.0);  // models sorted: loser, winner
    CHECK(r1.stability[0][1] == 1.0);
}

TEST_CASE("bootstrap agrees across worker counts") {
    DetRng rng(3);
    const std::vector<std::string> models = {"x", "y", "z"};
    const auto records = sample_comparisons(models, {2.0, 0.0, -2.0}, 300, rng);
    const auto serial = bootstrap_rank(records, 64, 11, 1);
    const auto par4 = bootstrap_rank(records, 64, 11, 4);
    const auto par8 = bootstrap_rank(records, 64, 11, 8);
    CHECK(serial.strengths == par4.strengths);
    CHECK(serial.stability == par4.stability);
    CHECK(serial.ci == par4.ci);
    CHECK(serial.stability == par8.stability);
    CHECK(serial.ci == par8.ci);
}

TEST_CASE("well-separated models dominate their bootstrap rank") {
    DetRng rng(41);
    const std::vector<std::string> models = {"top", "mid", "low"};
    const auto records = sample_comparisons(models, {2.0, 0.0, -2.0}, 600, rng);
    const auto ranking = bootstrap_rank(records, 200, 17);
    for (std::size_t m = 0; m < ranking.models.size(); ++m) {
        double row_sum = 0.0;
        double row_max = 0.0;
        for (double cell : ranking.stability[m]) {
            row_sum += cell;
            row_max = std::max(row_max, cell);
        }
        CHECK(row_sum == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(row_max >= 0.95);
    }
    // modal bootstrap ranking equals the point-estimate ranking
    for (std::size_t m = 0; m < ranking.models.size(); ++m) {
        const int point_rank = ranking.ranks.at(ranking.models[m]);
        std::size_t modal = 0;
        for (std::size_t r = 1; r < ranking.stability[m].size(); ++r) {
            if (ranking.stability[m][r] > ranking.stability[m][modal]) modal = r;
        }
        CHECK(static_cast<int>(modal) + 1 == point_rank);
    }
}

TEST_CASE("confidence intervals bracket the point estimate for stable data") {
    DetRng rng(4);
    const std::vector<std::string> models = {"x", "y"};
    const auto records = sample_comparisons(models, {0.8, -0.8}, 400, rng);
    const auto ranking = bootstrap_rank(records, 200, 5);
    for (const auto& [model, bounds] : ranking.ci) {
        CHECK(bounds.first <= bounds.second);
        CHECK(ranking.strengths.at(model) >= bounds.first - 0.3);
        CHECK(ranking.strengths.at(model) <= bounds.second + 0.3);
    }
}

TEST_CASE("spearman on identical, reversed, and near-identical rankings") {
    std::map<std::string, int> a = {{"m1", 1}, {"m2", 2}, {"m3", 3}, {"m4", 4}};
    CHECK(spearman(a, a) == doctest::Approx(1.0));

    std::map<std::string, int> rev = {{"m1", 4}, {"m2", 3}, {"m3", 2}, {"m4", 1}};
    CHECK(spearman(a, rev) == doctest::Approx(-1.0));

    std::map<std::string, int> swapped = {{"m1", 1}, {"m2", 2}, {"m3", 4}, {"m4", 3}};
    CHECK(spearman(a, swapped) == doctest::Approx(0.8));
}

TEST_CASE("spearman validates model sets") {
    std::map<std::string, int> a = {{"m1", 1}, {"m2", 2}};
    std::map<std::string, int> b = {{"m1", 1}, {"mX", 2}};
    CHECK_THROWS_AS(spearman(a, b), InputError);
    std::map<std::string, int> c = {{"m1", 1}};
    CHECK_THROWS_AS(spearman(a, c), InputError);
}

TEST_CASE("spearman averages tied ranks") {
    // b has m2 and m3 tied at rank 2
    std::map<std::string, int> a = {{"m1", 1}, {"m2", 2}, {"m3", 3}, {"m4", 4}};
    std::map<std::string, int> b = {{"m1", 1}, {"m2", 2}, {"m3", 2}, {"m4", 4}};
    const double rho = spearman(a, b);
    CHECK(rho > 0.9);
    CHECK(rho < 1.0);
}

TEST_CASE("ranks_from_strengths breaks exact ties by name") {
    std::map<std::string, double> strengths = {{"b", 0.0}, {"a", 0.0}, {"c", 1.0}};
    const auto ranks = ranks_from_strengths(strengths);
    CHECK(ranks.at("c") == 1);
    CHECK(ranks.at("a") == 2);
    CHECK(ranks.at("b") == 3);
}
