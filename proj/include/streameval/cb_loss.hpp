#pragma once

#include <cstdint>
#include <vector>

namespace streameval {

// Decision-token counts of one batch plus the reweighting hyperparameters.
struct TokenBatchStats {
    std::int64_t n_silence = 0;
    std::int64_t n_response = 0;
    double beta = 0.9999;
    double lambda_text = 2.0;
};

// Class-balanced weights for the two decision-token classes. Normalized so
// w_silence + w_response = 2; lambda_text is the flat language-token factor.
struct CbWeights {
    double w_silence = 1.0;
    double w_response = 1.0;
    double lambda_text = 2.0;
};

// Effective sample size (1 - beta^n) / (1 - beta). Tends to 1 as beta -> 0 and
// to n as beta -> 1. Requires n >= 1 and 0 <= beta < 1.
double effective_number(std::int64_t n, double beta);

// Inverse-effective-number weights, zero counts clamped to 1.
CbWeights cb_weights(const TokenBatchStats& stats);

enum class TokenLabel { Silence, Response, Text };

// Reference weighted objective: mean over positions of w_i * nll_i, with w_i
// chosen by the token label. Gradient propagation belongs to the trainer.
double weighted_loss(const std::vector<TokenLabel>& labels,
                     const std::vector<double>& nll, const CbWeights& weights);

}  // namespace streameval
