#include "streameval/cb_loss.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "streameval/errors.hpp"

namespace streameval {

double effective_number(std::int64_t n, double beta) {
    if (beta < 0.0 || beta >= 1.0) {
        throw ConfigError("effective_number: beta must lie in [0, 1), got " +
                          std::to_string(beta));
    }
    if (n < 1) {
        throw InputError("effective_number: count must be >= 1, got " +
                         std::to_string(n));
    }
    if (beta == 0.0) return 1.0;
    return (1.0 - std::pow(beta, static_cast<double>(n))) / (1.0 - beta);
}

CbWeights cb_weights(const TokenBatchStats& stats) {
    if (stats.n_silence < 0 || stats.n_response < 0) {
        throw InputError("cb_weights: counts must be >= 0");
    }
    if (!(stats.lambda_text > 0.0)) {
        throw ConfigError("cb_weights: lambda_text must be > 0");
    }
    // zero-count classes degrade to the singleton case
    const std::int64_t n_silence = std::max<std::int64_t>(1, stats.n_silence);
    const std::int64_t n_response = std::max<std::int64_t>(1, stats.n_response);
    const double inv_silence = 1.0 / effective_number(n_silence, stats.beta);
    const double inv_response = 1.0 / effective_number(n_response, stats.beta);
    const double inv_sum = inv_silence + inv_response;
    CbWeights weights;
    weights.w_silence = inv_silence / inv_sum * 2.0;
    weights.w_response = inv_response / inv_sum * 2.0;
    weights.lambda_text = stats.lambda_text;
    return weights;
}

double weighted_loss(const std::vector<TokenLabel>& labels,
                     const std::vector<double>& nll, const CbWeights& weights) {
    if (labels.size() != nll.size()) {
        throw InputError("weighted_loss: labels and nll lengths differ (" +
                         std::to_string(labels.size()) + " vs " +
                         std::to_string(nll.size()) + ")");
    }
    if (labels.empty()) {
        throw InputError("weighted_loss: sequence must be nonempty");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (nll[i] < 0.0) {
            throw InputError("weighted_loss: nll values must be nonnegative");
        }
        switch (labels[i]) {
            case TokenLabel::Silence: sum += weights.w_silence * nll[i]; break;
            case TokenLabel::Response: sum += weights.w_response * nll[i]; break;
            case TokenLabel::Text: sum += weights.lambda_text * nll[i]; break;
        }
    }
    return sum / static_cast<double>(labels.size());
}

}  // namespace streameval
