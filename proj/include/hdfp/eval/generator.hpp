#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hdfp/molgraph.hpp"

namespace hdfp::eval {

struct GeneratorOptions {
  std::size_t min_atoms = 4;
  std::size_t max_atoms = 30;
  double benzene_probability = 0.15;   // per growth step, when room remains
  double aliphatic_ring_probability = 0.08;
  double ring_closure_probability = 0.3;  // once per molecule
  double double_bond_probability = 0.1;
};

// Random valid molecules grown atom by atom (with occasional ring
// fragments), distinct by graph_signature. Deterministic for a given seed.
std::vector<mol::MolGraph> generate_corpus(std::size_t count, std::uint64_t seed,
                                           const GeneratorOptions& options = {});

}  // namespace hdfp::eval
