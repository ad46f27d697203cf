#include <algorithm>
#include <deque>
#include <random>
#include <string>
#include <unordered_set>

#include "hdfp/eval/ged.hpp"
#include "hdfp/error.hpp"

namespace hdfp::eval {

using mol::AtomRecord;
using mol::Bond;
using mol::MolGraph;

namespace {

bool connected_without(const MolGraph& g, std::size_t skip_bond) {
  const Bond& cut = g.bonds()[skip_bond];
  std::vector<bool> seen(g.size(), false);
  std::deque<std::size_t> queue{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    for (const mol::Neighbor& nb : g.neighbors(u)) {
      const bool is_cut = (u == cut.a && nb.atom == cut.b) || (u == cut.b && nb.atom == cut.a);
      if (is_cut || seen[nb.atom]) continue;
      seen[nb.atom] = true;
      ++reached;
      queue.push_back(nb.atom);
    }
  }
  return reached == g.size();
}

}  // namespace

std::vector<MolGraph> perturb_all(const MolGraph& g, std::span<const mol::Element> elements) {
  std::vector<MolGraph> out;
  std::unordered_set<std::uint64_t> seen{mol::graph_signature(g)};

  auto emit = [&](std::vector<AtomRecord> atoms, std::vector<Bond> bonds) {
    auto valid = mol::try_assign_hydrogens(MolGraph(std::move(atoms), std::move(bonds)));
    if (!valid) return;
    if (seen.insert(mol::graph_signature(*valid)).second) out.push_back(std::move(*valid));
  };

  const auto& atoms = g.atoms();
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    for (mol::Element e : elements) {
      if (e == atoms[i].element) continue;
      if (atoms[i].aromatic && !mol::can_be_aromatic(e)) continue;
      auto edited = atoms;
      edited[i] = AtomRecord{e, 0, 0, atoms[i].aromatic, false};
      emit(std::move(edited), g.bonds());
    }
  }

  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (atoms[i].h_count == 0) continue;
    for (std::size_t j = i + 1; j < atoms.size(); ++j) {
      if (atoms[j].h_count == 0 || g.bond_between(i, j)) continue;
      auto bonds = g.bonds();
      bonds.push_back({i, j, mol::BondOrder::kSingle});
      emit(atoms, std::move(bonds));
    }
  }

  for (std::size_t k = 0; k < g.bonds().size(); ++k) {
    if (!connected_without(g, k)) continue;
    auto bonds = g.bonds();
    bonds.erase(bonds.begin() + static_cast<std::ptrdiff_t>(k));
    emit(atoms, std::move(bonds));
  }
  return out;
}

GedDataset build_ged_dataset(std::span<const MolGraph> seeds, int max_depth,
                             std::size_t pairs_per_seed, std::uint64_t rng_seed,
                             const LadderOptions& options) {
  if (max_depth < 1 || max_depth > kMaxLadderDepth) {
    throw Error(ErrorKind::kConfig, "ladder depth must be in 1.." + std::to_string(kMaxLadderDepth));
  }
  if (pairs_per_seed == 0) throw Error(ErrorKind::kConfig, "pairs_per_seed must be positive");
  if (options.frontier_limit == 0) throw Error(ErrorKind::kConfig, "frontier_limit must be positive");

  GedDataset data;
  const hdc::SeededGenerator gen(rng_seed);
  for (std::size_t s = 0; s < seeds.size(); ++s) {
    auto rng = gen.stream("ladder:" + std::to_string(s));
    const MolGraph& seed = seeds[s];

    std::unordered_set<std::uint64_t> seen{mol::graph_signature(seed)};
    std::vector<std::vector<MolGraph>> levels;
    std::vector<MolGraph> frontier{seed};
    for (int depth = 1; depth <= max_depth && !frontier.empty(); ++depth) {
      std::vector<MolGraph> next;
      for (const MolGraph& m : frontier) {
        for (MolGraph& p : perturb_all(m, options.elements)) {
          if (seen.insert(mol::graph_signature(p)).second) next.push_back(std::move(p));
        }
      }
      if (next.size() > options.frontier_limit) {
        std::shuffle(next.begin(), next.end(), rng);
        next.erase(next.begin() + static_cast<std::ptrdiff_t>(options.frontier_limit), next.end());
      }
      levels.push_back(next);
      frontier = std::move(next);
    }

    if (levels.empty() || levels.front().empty()) {
      data.warnings.push_back("seed " + std::to_string(s) +
                              " has no valid perturbations; skipped");
      continue;
    }

    for (auto& level : levels) std::shuffle(level.begin(), level.end(), rng);
    std::vector<std::size_t> cursor(levels.size(), 0);
    std::size_t taken = 0;
    bool progressed = true;
    while (taken < pairs_per_seed && progressed) {
      progressed = false;
      for (std::size_t d = 0; d < levels.size() && taken < pairs_per_seed; ++d) {
        if (cursor[d] >= levels[d].size()) continue;
        data.pairs.push_back({seed, levels[d][cursor[d]++], static_cast<int>(d) + 1});
        ++taken;
        progressed = true;
      }
    }
    if (taken < pairs_per_seed) {
      data.warnings.push_back("seed " + std::to_string(s) + ": ladder exhausted after " +
                              std::to_string(taken) + " of " + std::to_string(pairs_per_seed) +
                              " pairs");
    }
  }
  return data;
}

}  // namespace hdfp::eval
