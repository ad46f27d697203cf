#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hdfp/eval/features.hpp"

namespace hdfp::eval {

enum class Acquisition { kExpectedImprovement, kRandom };

struct BoConfig {
  std::size_t init_points = 10;
  std::size_t rounds = 150;
  // nullopt: median heuristic over the initial design.
  std::optional<double> lengthscale;
  double noise_variance = 1e-4;
  double target_value = 0.0;
  std::uint64_t seed = 0;
  Acquisition acquisition = Acquisition::kExpectedImprovement;

  void validate() const;
};

struct BoTrace {
  // Best |y - target| observed so far, after each round's query.
  std::vector<double> best_distance_per_round;
  double auc = 0.0;  // sum of best_distance_per_round
  bool truncated = false;  // library ran out before cfg.rounds
  std::vector<std::size_t> queried;  // library indices in query order, init first
};

// Pool-based Bayesian optimization over a fixed library: objective
// |label - target| minimized with a GP surrogate and expected improvement
// (or uniform random choice in kRandom mode).
BoTrace bo_run(const FeatureMatrix& library, std::span<const double> labels,
               const BoConfig& config);

}  // namespace hdfp::eval
