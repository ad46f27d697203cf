#pragma once

// Perturbation ladders with known edit counts, and the correlation between
// representation distances and those counts.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "hdfp/encoder.hpp"
#include "hdfp/molgraph.hpp"
#include "hdfp/morgan.hpp"

namespace hdfp::eval {

struct GedPair {
  mol::MolGraph mol_a;
  mol::MolGraph mol_b;
  int edit_distance;  // edits along the generation path; an upper bound on GED
};

// Every distinct valid molecule one edit away from g: element substitution,
// single-bond addition between unbonded atoms, or bond deletion that keeps the
// graph connected. Deduplicated by graph_signature, in generation order.
std::vector<mol::MolGraph> perturb_all(const mol::MolGraph& g,
                                       std::span<const mol::Element> elements);

struct LadderOptions {
  // Molecules kept per depth after deduplication (sampled with the rng).
  std::size_t frontier_limit = 64;
  std::vector<mol::Element> elements = {mol::Element::C, mol::Element::N, mol::Element::O,
                                        mol::Element::S, mol::Element::F, mol::Element::Cl};
};

struct GedDataset {
  std::vector<GedPair> pairs;
  std::vector<std::string> warnings;
};

inline constexpr int kMaxLadderDepth = 8;

// Breadth-first ladder per seed up to max_depth; a molecule first reached at
// depth k is paired with its seed and labeled k. Pairs are drawn round-robin
// over depths without replacement. Deterministic for a given rng_seed.
GedDataset build_ged_dataset(std::span<const mol::MolGraph> seeds, int max_depth,
                             std::size_t pairs_per_seed, std::uint64_t rng_seed,
                             const LadderOptions& options = {});

using PairDistance = std::function<double(const mol::MolGraph&, const mol::MolGraph&)>;

// |pearson(distance(a, b), edit_distance)| over the pairs. Needs >= 10 pairs.
double ged_correlation(std::span<const GedPair> pairs, const PairDistance& distance);

// 1 - cosine similarity of HDF vectors. The encoder must outlive the result.
PairDistance hdf_cosine_distance(const encoder::Encoder& encoder);
// 1 - Tanimoto similarity of Morgan-lite bits.
PairDistance morgan_tanimoto_distance(const baseline::MorganConfig& config);

}  // namespace hdfp::eval
