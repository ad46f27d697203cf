#include "hdfp/eval/knn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "hdfp/error.hpp"

namespace hdfp::eval {

double pair_distance(Distance d, std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw Error(ErrorKind::kShape, "distance: dimension mismatch");
  double ab = 0.0, aa = 0.0, bb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ab += a[i] * b[i];
    aa += a[i] * a[i];
    bb += b[i] * b[i];
  }
  if (d == Distance::kCosine) {
    if (aa == 0.0 && bb == 0.0) return 0.0;
    if (aa == 0.0 || bb == 0.0) return 1.0;
    return 1.0 - std::clamp(ab / std::sqrt(aa * bb), -1.0, 1.0);
  }
  const double denom = aa + bb - ab;
  if (denom == 0.0) return 0.0;
  return 1.0 - ab / denom;
}

std::vector<double> knn_predict(const FeatureMatrix& train, std::span<const double> train_y,
                                const FeatureMatrix& test, const KnnConfig& config) {
  if (train.rows() != train_y.size()) throw Error(ErrorKind::kShape, "knn: train labels misaligned");
  if (config.k == 0 || config.k > train.rows()) {
    throw Error(ErrorKind::kConfig, "knn: k=" + std::to_string(config.k) +
                                        " must be in 1..training size " +
                                        std::to_string(train.rows()));
  }
  if (test.rows() > 0 && test.cols() != train.cols()) {
    throw Error(ErrorKind::kShape, "knn: train/test dimension mismatch");
  }

  std::vector<double> predictions(test.rows());
  std::vector<std::pair<double, std::size_t>> scored(train.rows());
  for (std::size_t q = 0; q < test.rows(); ++q) {
    for (std::size_t i = 0; i < train.rows(); ++i) {
      scored[i] = {pair_distance(config.distance, test.row(q), train.row(i)), i};
    }
    // Pair ordering breaks distance ties by the lower training index.
    std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(config.k),
                      scored.end());
    double sum = 0.0;
    for (std::size_t j = 0; j < config.k; ++j) sum += train_y[scored[j].second];
    predictions[q] = sum / static_cast<double>(config.k);
  }
  return predictions;
}

double knn_mae(const FeatureMatrix& train, std::span<const double> train_y,
               const FeatureMatrix& test, std::span<const double> test_y,
               const KnnConfig& config) {
  if (test.rows() != test_y.size()) throw Error(ErrorKind::kShape, "knn: test labels misaligned");
  if (test.rows() == 0) throw Error(ErrorKind::kEmptyInput, "knn: empty test set");
  const auto pred = knn_predict(train, train_y, test, config);
  double total = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) total += std::abs(pred[i] - test_y[i]);
  return total / static_cast<double>(pred.size());
}

}  // namespace hdfp::eval
