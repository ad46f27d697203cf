#include <algorithm>
#include <cstdlib>

#include "hdfp/error.hpp"
#include "hdfp/molgraph.hpp"

namespace hdfp::mol {
namespace {

std::span<const int> neutral_valences(Element e) {
  static constexpr int kB[] = {3};
  static constexpr int kC[] = {4};
  static constexpr int kN[] = {3};
  static constexpr int kO[] = {2};
  static constexpr int kP[] = {3, 5};
  static constexpr int kS[] = {2, 4, 6};
  static constexpr int kHalogen[] = {1};
  switch (e) {
    case Element::B: return kB;
    case Element::C: return kC;
    case Element::N: return kN;
    case Element::O: return kO;
    case Element::P: return kP;
    case Element::S: return kS;
    default: return kHalogen;
  }
}

int charge_adjusted(Element e, int valence, int charge) {
  switch (e) {
    case Element::C: return valence - std::abs(charge);
    case Element::B: return valence - charge;
    default: return valence + charge;
  }
}

struct BondSums {
  int sigma = 0;     // non-aromatic orders + 1 per aromatic bond
  int aromatic = 0;  // number of aromatic bonds
};

BondSums bond_sums(const MolGraph& g, std::size_t i) {
  BondSums s;
  for (const Neighbor& nb : g.neighbors(i)) {
    if (nb.order == BondOrder::kAromatic) {
      ++s.aromatic;
      ++s.sigma;
    } else {
      s.sigma += bond_code(nb.order);
    }
  }
  return s;
}

// Returns the implicit hydrogen count, or -1 if no valence fits.
int implicit_hydrogens(const AtomRecord& atom, const BondSums& sums) {
  for (int base : neutral_valences(atom.element)) {
    const int v = charge_adjusted(atom.element, base, atom.formal_charge);
    const int pi = (atom.aromatic && sums.aromatic > 0 && sums.sigma + 1 <= v) ? 1 : 0;
    if (sums.sigma + pi <= v) return v - sums.sigma - pi;
  }
  return -1;
}

}  // namespace

std::optional<ValenceState> valence_state(const MolGraph& g, std::size_t i) {
  const AtomRecord& atom = g.atom(i);
  const BondSums sums = bond_sums(g, i);
  for (int base : neutral_valences(atom.element)) {
    const int v = charge_adjusted(atom.element, base, atom.formal_charge);
    const int pi =
        (atom.aromatic && sums.aromatic > 0 && sums.sigma + 1 + atom.h_count <= v) ? 1 : 0;
    if (sums.sigma + pi + atom.h_count <= v) return ValenceState{sums.sigma + pi, v};
  }
  return std::nullopt;
}

std::optional<int> implicit_hydrogen_count(const MolGraph& g, std::size_t i) {
  const int h = implicit_hydrogens(g.atom(i), bond_sums(g, i));
  if (h < 0) return std::nullopt;
  return h;
}

namespace {

struct Assignment {
  std::optional<MolGraph> graph;
  std::size_t bad_atom = 0;
};

Assignment assign(const MolGraph& g) {
  std::vector<AtomRecord> atoms = g.atoms();
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (atoms[i].explicit_h) continue;
    const int h = implicit_hydrogens(atoms[i], bond_sums(g, i));
    if (h < 0) return {std::nullopt, i};
    atoms[i].h_count = h;
  }
  MolGraph out(std::move(atoms), g.bonds());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out.atoms()[i].explicit_h && !valence_state(out, i)) return {std::nullopt, i};
  }
  return {std::move(out), 0};
}

}  // namespace

MolGraph assign_hydrogens(const MolGraph& g) {
  Assignment a = assign(g);
  if (!a.graph) {
    const AtomRecord& atom = g.atoms()[a.bad_atom];
    throw ValenceError(a.bad_atom, std::string(symbol(atom.element)) + " with " +
                                       std::to_string(heavy_degree(g, a.bad_atom)) +
                                       " heavy bonds exceeds its allowed valence");
  }
  return std::move(*a.graph);
}

std::optional<MolGraph> try_assign_hydrogens(const MolGraph& g) {
  return assign(g).graph;
}

}  // namespace hdfp::mol
