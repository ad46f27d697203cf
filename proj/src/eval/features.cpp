#include "hdfp/eval/features.hpp"

#include <algorithm>

#include "hdfp/error.hpp"
#include "hdfp/parallel.hpp"

namespace hdfp::eval {

FeatureMatrix FeatureMatrix::select(std::span<const std::size_t> indices) const {
  FeatureMatrix out(indices.size(), cols_);
  for (std::size_t r = 0; r < indices.size(); ++r) {
    if (indices[r] >= rows_) throw Error(ErrorKind::kIndexOutOfRange, "feature row out of range");
    const auto src = row(indices[r]);
    std::copy(src.begin(), src.end(), out.row(r).begin());
  }
  return out;
}

FeatureMatrix hdf_features(const encoder::Encoder& encoder, std::span<const mol::MolGraph> graphs,
                           unsigned threads) {
  FeatureMatrix out(graphs.size(), encoder.config().dim);
  parallel_for(graphs.size(), threads, [&](std::size_t i) {
    const auto fp = encoder.encode(graphs[i]);
    const auto c = fp.vector.components();
    std::copy(c.begin(), c.end(), out.row(i).begin());
  });
  return out;
}

FeatureMatrix morgan_features(const baseline::MorganConfig& config,
                              std::span<const mol::MolGraph> graphs, unsigned threads) {
  config.validate();
  FeatureMatrix out(graphs.size(), config.nbits);
  parallel_for(graphs.size(), threads, [&](std::size_t i) {
    const auto dense = baseline::morgan_encode(config, graphs[i]).to_dense();
    std::copy(dense.begin(), dense.end(), out.row(i).begin());
  });
  return out;
}

}  // namespace hdfp::eval
