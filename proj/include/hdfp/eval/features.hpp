#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hdfp/encoder.hpp"
#include "hdfp/molgraph.hpp"
#include "hdfp/morgan.hpp"

namespace hdfp::eval {

// Dense row-major matrix of per-molecule feature vectors.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  FeatureMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  const std::vector<double>& data() const noexcept { return data_; }

  FeatureMatrix select(std::span<const std::size_t> indices) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

FeatureMatrix hdf_features(const encoder::Encoder& encoder, std::span<const mol::MolGraph> graphs,
                           unsigned threads = 1);

// Bits mapped to {0, 1} reals.
FeatureMatrix morgan_features(const baseline::MorganConfig& config,
                              std::span<const mol::MolGraph> graphs, unsigned threads = 1);

}  // namespace hdfp::eval
