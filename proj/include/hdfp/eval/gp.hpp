#pragma once

#include <span>
#include <vector>

#include "hdfp/eval/features.hpp"

namespace hdfp::eval {

struct GpPrediction {
  std::vector<double> mean;
  std::vector<double> variance;  // latent-function variance, clamped at 0
};

// Cholesky jitter ladder tried after a failed factorization.
inline constexpr double kJitterLadder[] = {1e-10, 1e-9, 1e-8, 1e-7, 1e-6};

// Exact GP regression, zero prior mean, kernel exp(-|a-b|^2 / (2 l^2)) with
// unit signal variance, `noise` on the diagonal. Throws kNumeric if the
// kernel matrix is not positive definite after the largest jitter.
GpPrediction gp_fit_predict(const FeatureMatrix& x, std::span<const double> y,
                            const FeatureMatrix& query, double lengthscale, double noise);

// Median pairwise Euclidean distance between rows; 1 if that is 0.
double median_heuristic_lengthscale(const FeatureMatrix& x);

// EI for minimization: (best - mean) Phi(z) + sd phi(z), z = (best - mean)/sd.
double expected_improvement(double mean, double variance, double best);

}  // namespace hdfp::eval
