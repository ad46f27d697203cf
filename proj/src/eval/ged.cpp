#include <cmath>
#include <vector>

#include "hdfp/error.hpp"
#include "hdfp/eval/ged.hpp"
#include "hdfp/eval/stats.hpp"

namespace hdfp::eval {

double ged_correlation(std::span<const GedPair> pairs, const PairDistance& distance) {
  if (pairs.size() < 10) {
    throw Error(ErrorKind::kConfig, "GED correlation needs at least 10 pairs");
  }
  std::vector<double> d, ged;
  d.reserve(pairs.size());
  ged.reserve(pairs.size());
  for (const GedPair& p : pairs) {
    if (p.edit_distance < 1) throw Error(ErrorKind::kInvalidValue, "GED pair with edit distance < 1");
    d.push_back(distance(p.mol_a, p.mol_b));
    ged.push_back(static_cast<double>(p.edit_distance));
  }
  return std::abs(pearson(d, ged));
}

PairDistance hdf_cosine_distance(const encoder::Encoder& encoder) {
  return [&encoder](const mol::MolGraph& a, const mol::MolGraph& b) {
    return 1.0 - hdc::cosine_sim(encoder.encode(a).vector, encoder.encode(b).vector);
  };
}

PairDistance morgan_tanimoto_distance(const baseline::MorganConfig& config) {
  config.validate();
  return [config](const mol::MolGraph& a, const mol::MolGraph& b) {
    return 1.0 - baseline::tanimoto(baseline::morgan_encode(config, a),
                                    baseline::morgan_encode(config, b));
  };
}

}  // namespace hdfp::eval
