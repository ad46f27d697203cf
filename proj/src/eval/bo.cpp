#include "hdfp/eval/bo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "hdfp/error.hpp"
#include "hdfp/eval/gp.hpp"
#include "hdfp/hash.hpp"

namespace hdfp::eval {

void BoConfig::validate() const {
  if (init_points == 0) throw Error(ErrorKind::kConfig, "bo: init_points must be positive");
  if (rounds == 0) throw Error(ErrorKind::kConfig, "bo: rounds must be positive");
  if (!(noise_variance > 0.0)) throw Error(ErrorKind::kConfig, "bo: noise_variance must be positive");
  if (lengthscale && !(*lengthscale > 0.0)) {
    throw Error(ErrorKind::kConfig, "bo: lengthscale must be positive");
  }
  if (!std::isfinite(target_value)) throw Error(ErrorKind::kConfig, "bo: target must be finite");
}

BoTrace bo_run(const FeatureMatrix& library, std::span<const double> labels,
               const BoConfig& config) {
  config.validate();
  const std::size_t n = labels.size();
  if (library.rows() != n) throw Error(ErrorKind::kShape, "bo: features and labels misaligned");
  if (n == 0) throw Error(ErrorKind::kEmptyInput, "bo: empty library");

  std::vector<double> objective(n);
  for (std::size_t i = 0; i < n; ++i) objective[i] = std::abs(labels[i] - config.target_value);

  std::mt19937_64 rng(mix64(config.seed));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  BoTrace trace;
  std::vector<bool> observed(n, false);
  const std::size_t init = std::min(config.init_points, n);
  for (std::size_t i = 0; i < init; ++i) {
    observed[order[i]] = true;
    trace.queried.push_back(order[i]);
  }
  double best = objective[trace.queried.front()];
  for (std::size_t idx : trace.queried) best = std::min(best, objective[idx]);

  double lengthscale = 1.0;
  if (config.acquisition == Acquisition::kExpectedImprovement) {
    lengthscale = config.lengthscale ? *config.lengthscale
                                     : median_heuristic_lengthscale(library.select(trace.queried));
  }

  for (std::size_t round = 0; round < config.rounds; ++round) {
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < n; ++i) {
      if (!observed[i]) candidates.push_back(i);
    }
    if (candidates.empty()) {
      trace.truncated = true;
      break;
    }

    std::size_t pick = candidates.front();
    if (config.acquisition == Acquisition::kRandom) {
      std::uniform_int_distribution<std::size_t> uniform(0, candidates.size() - 1);
      pick = candidates[uniform(rng)];
    } else {
      // Standardize the observed objectives; EI's argmax is unchanged by a
      // positive affine map, and the GP prior has unit signal variance.
      std::vector<double> y;
      y.reserve(trace.queried.size());
      for (std::size_t idx : trace.queried) y.push_back(objective[idx]);
      const double mu = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size());
      double var = 0.0;
      for (double v : y) var += (v - mu) * (v - mu);
      const double sd = y.size() > 1 ? std::sqrt(var / static_cast<double>(y.size() - 1)) : 0.0;
      const double scale = sd > 0.0 ? sd : 1.0;
      for (double& v : y) v = (v - mu) / scale;
      const double best_std = *std::min_element(y.begin(), y.end());

      const auto pred = gp_fit_predict(library.select(trace.queried), y,
                                       library.select(candidates), lengthscale,
                                       config.noise_variance);
      double best_ei = -1.0;
      for (std::size_t c = 0; c < candidates.size(); ++c) {
        const double ei = expected_improvement(pred.mean[c], pred.variance[c], best_std);
        if (ei > best_ei) {
          best_ei = ei;
          pick = candidates[c];
        }
      }
    }

    observed[pick] = true;
    trace.queried.push_back(pick);
    best = std::min(best, objective[pick]);
    trace.best_distance_per_round.push_back(best);
  }
  trace.auc = std::accumulate(trace.best_distance_per_round.begin(),
                              trace.best_distance_per_round.end(), 0.0);
  return trace;
}

}  // namespace hdfp::eval
