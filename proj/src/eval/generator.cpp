#include "hdfp/eval/generator.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <unordered_set>

#include "hdfp/error.hpp"
#include "hdfp/hdc.hpp"

namespace hdfp::eval {

using mol::AtomRecord;
using mol::Bond;
using mol::BondOrder;
using mol::Element;
using mol::MolGraph;

namespace {

struct Draft {
  std::vector<AtomRecord> atoms;
  std::vector<Bond> bonds;
};

std::optional<MolGraph> realize(const Draft& d) {
  return mol::try_assign_hydrogens(MolGraph(d.atoms, d.bonds));
}

Element draw_element(std::mt19937_64& rng) {
  static constexpr Element kElements[] = {Element::C, Element::N,  Element::O, Element::S,
                                          Element::F, Element::Cl, Element::Br};
  static constexpr double kWeights[] = {0.62, 0.12, 0.14, 0.03, 0.03, 0.04, 0.02};
  std::discrete_distribution<int> dist(std::begin(kWeights), std::end(kWeights));
  return kElements[dist(rng)];
}

void add_ring(Draft& d, std::size_t anchor, std::size_t ring_size, bool aromatic,
              std::optional<Element> hetero) {
  const std::size_t first = d.atoms.size();
  for (std::size_t k = 0; k < ring_size; ++k) {
    AtomRecord a{Element::C};
    a.aromatic = aromatic;
    d.atoms.push_back(a);
  }
  if (hetero) d.atoms[first + 2].element = *hetero;
  const BondOrder order = aromatic ? BondOrder::kAromatic : BondOrder::kSingle;
  for (std::size_t k = 0; k < ring_size; ++k) {
    d.bonds.push_back({first + k, first + (k + 1) % ring_size, order});
  }
  if (anchor != first) d.bonds.push_back({anchor, first, BondOrder::kSingle});
}

std::optional<MolGraph> grow(std::mt19937_64& rng, const GeneratorOptions& opt) {
  std::uniform_int_distribution<std::size_t> size_dist(opt.min_atoms, opt.max_atoms);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t target = size_dist(rng);

  Draft draft;
  if (target >= 6 && unit(rng) < 2.0 * opt.benzene_probability) {
    add_ring(draft, 0, 6, true, std::nullopt);
  } else {
    draft.atoms.push_back(AtomRecord{unit(rng) < 0.8 ? Element::C : draw_element(rng)});
  }
  auto current = realize(draft);
  if (!current) return std::nullopt;

  for (int attempt = 0; attempt < 400 && current->size() < target; ++attempt) {
    std::vector<std::size_t> anchors;
    for (std::size_t i = 0; i < current->size(); ++i) {
      if (current->atoms()[i].h_count > 0) anchors.push_back(i);
    }
    if (anchors.empty()) break;
    const std::size_t anchor =
        anchors[std::uniform_int_distribution<std::size_t>(0, anchors.size() - 1)(rng)];
    const std::size_t room = target - current->size();

    Draft next = draft;
    const double r = unit(rng);
    if (r < opt.benzene_probability && room >= 6) {
      const bool pyridine = unit(rng) < 0.2;
      add_ring(next, anchor, 6, true, pyridine ? std::optional(Element::N) : std::nullopt);
    } else if (r < opt.benzene_probability + opt.aliphatic_ring_probability && room >= 5) {
      const std::size_t ring_size = room >= 6 && unit(rng) >= 0.5 ? 6 : 5;
      std::optional<Element> hetero;
      if (unit(rng) < 0.3) hetero = unit(rng) < 0.5 ? Element::N : Element::O;
      add_ring(next, anchor, ring_size, false, hetero);
    } else {
      const Element e = draw_element(rng);
      BondOrder order = BondOrder::kSingle;
      const bool can_multiply = !current->atoms()[anchor].aromatic &&
                                (e == Element::C || e == Element::N || e == Element::O);
      if (can_multiply && unit(rng) < opt.double_bond_probability) order = BondOrder::kDouble;
      else if (can_multiply && e != Element::O && unit(rng) < 0.02) order = BondOrder::kTriple;
      next.atoms.push_back(AtomRecord{e});
      next.bonds.push_back({anchor, next.atoms.size() - 1, order});
    }
    if (auto g = realize(next)) {
      draft = std::move(next);
      current = std::move(g);
    }
  }

  if (unit(rng) < opt.ring_closure_probability) {
    const auto dist = mol::distance_matrix(*current);
    const std::size_t n = current->size();
    std::vector<std::pair<std::size_t, std::size_t>> options;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const int d = dist[i * n + j];
        const auto& a = current->atoms()[i];
        const auto& b = current->atoms()[j];
        if ((d == 4 || d == 5) && a.h_count > 0 && b.h_count > 0 && !a.aromatic && !b.aromatic) {
          options.emplace_back(i, j);
        }
      }
    }
    if (!options.empty()) {
      const auto [i, j] = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
      Draft next = draft;
      next.bonds.push_back({i, j, BondOrder::kSingle});
      if (auto g = realize(next)) current = std::move(g);
    }
  }

  if (current->size() < opt.min_atoms) return std::nullopt;
  return current;
}

}  // namespace

std::vector<MolGraph> generate_corpus(std::size_t count, std::uint64_t seed,
                                      const GeneratorOptions& options) {
  if (options.min_atoms < 1 || options.min_atoms > options.max_atoms) {
    throw Error(ErrorKind::kConfig, "generator: need 1 <= min_atoms <= max_atoms");
  }
  auto rng = hdc::SeededGenerator(seed).stream("corpus");
  std::vector<MolGraph> out;
  std::unordered_set<std::uint64_t> seen;
  const std::size_t max_attempts = 50 * count + 1000;
  for (std::size_t attempt = 0; attempt < max_attempts && out.size() < count; ++attempt) {
    auto g = grow(rng, options);
    if (g && seen.insert(mol::graph_signature(*g)).second) out.push_back(std::move(*g));
  }
  if (out.size() < count) {
    throw Error(ErrorKind::kConfig, "generator: could not produce " + std::to_string(count) +
                                        " distinct molecules");
  }
  return out;
}

}  // namespace hdfp::eval
