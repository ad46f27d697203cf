#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hdfp/eval/features.hpp"

namespace hdfp::eval {

enum class Distance { kCosine, kTanimoto };

struct KnnConfig {
  std::size_t k = 5;
  Distance distance = Distance::kCosine;
};

// 1 - cosine, or 1 - continuous Tanimoto (a.b / (|a|^2 + |b|^2 - a.b)), which
// equals bitwise Tanimoto on {0,1} vectors. Zero-vector pairs: cosine
// distance 1 unless both are zero; two zero vectors are at distance 0.
double pair_distance(Distance d, std::span<const double> a, std::span<const double> b);

// Unweighted mean of the k nearest training labels; distance ties go to the
// lower training index. Throws kConfig when k is 0 or exceeds the train size.
std::vector<double> knn_predict(const FeatureMatrix& train, std::span<const double> train_y,
                                const FeatureMatrix& test, const KnnConfig& config);

double knn_mae(const FeatureMatrix& train, std::span<const double> train_y,
               const FeatureMatrix& test, std::span<const double> test_y,
               const KnnConfig& config);

}  // namespace hdfp::eval
