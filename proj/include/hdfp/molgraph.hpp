#pragma once

// Heavy-atom molecular graphs parsed from a SMILES subset.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hdfp::mol {

enum class Element : std::uint8_t { B, C, N, O, P, S, F, Cl, Br, I };

inline constexpr std::array<Element, 10> kSupportedElements = {
    Element::B, Element::C, Element::N,  Element::O,  Element::P,
    Element::S, Element::F, Element::Cl, Element::Br, Element::I};

int atomic_number(Element e);
std::string_view symbol(Element e);
// Accepts the capitalized symbol ("Cl"); nullopt for anything unsupported.
std::optional<Element> element_from_symbol(std::string_view s);
// Elements that may carry the lowercase aromatic form.
bool can_be_aromatic(Element e);

struct AtomRecord {
  Element element = Element::C;
  int h_count = 0;
  int formal_charge = 0;
  bool aromatic = false;
  // Hydrogen count fixed by a bracket atom rather than the valence model.
  bool explicit_h = false;

  friend bool operator==(const AtomRecord&, const AtomRecord&) = default;
};

enum class BondOrder : std::uint8_t { kSingle = 1, kDouble = 2, kTriple = 3, kAromatic = 4 };

// Integer code used in hashes: {1, 2, 3, 4 (aromatic)}.
inline int bond_code(BondOrder o) { return static_cast<int>(o); }
double bond_order_value(BondOrder o);

struct Bond {
  std::size_t a = 0;
  std::size_t b = 0;
  BondOrder order = BondOrder::kSingle;

  friend bool operator==(const Bond&, const Bond&) = default;
};

struct Neighbor {
  std::size_t atom;
  BondOrder order;
};

// Immutable connected heavy-atom graph. The constructor validates endpoints,
// rejects self-loops, duplicate bonds and disconnected graphs. Hydrogen counts
// are taken as given; use assign_hydrogens() to derive them.
class MolGraph {
 public:
  MolGraph(std::vector<AtomRecord> atoms, std::vector<Bond> bonds);

  std::size_t size() const noexcept { return atoms_.size(); }
  const std::vector<AtomRecord>& atoms() const noexcept { return atoms_; }
  const AtomRecord& atom(std::size_t i) const;
  const std::vector<Bond>& bonds() const noexcept { return bonds_; }
  std::span<const Neighbor> neighbors(std::size_t i) const;
  std::optional<BondOrder> bond_between(std::size_t i, std::size_t j) const;

  friend bool operator==(const MolGraph& a, const MolGraph& b) {
    return a.atoms_ == b.atoms_ && a.bonds_ == b.bonds_;
  }

 private:
  std::vector<AtomRecord> atoms_;
  std::vector<Bond> bonds_;
  std::vector<std::vector<Neighbor>> adjacency_;
};

// Number of heavy-atom neighbors of atom i. Throws kIndexOutOfRange.
int heavy_degree(const MolGraph& g, std::size_t i);

// Longest shortest path (BFS from every atom).
int diameter(const MolGraph& g);

// Sum of shortest-path lengths over unordered atom pairs.
std::int64_t wiener_index(const MolGraph& g);

// All-pairs unweighted distances, row-major size() x size().
std::vector<int> distance_matrix(const MolGraph& g);

// Atom i of the input becomes atom perm[i] of the output.
MolGraph permute(const MolGraph& g, std::span<const std::size_t> perm);

// Fraction of heavy atoms that are not carbon.
double heteroatom_fraction(const MolGraph& g);

// Weisfeiler-Lehman style isomorphism-invariant hash over elements, charges,
// hydrogen counts, aromaticity and bond orders. Isomorphic graphs always
// collide; distinct graphs collide only by chance or WL-indistinguishability.
std::uint64_t graph_signature(const MolGraph& g);

// ---- valence model ----

// Bond valence of atom i: non-aromatic bond orders plus one per aromatic bond,
// plus one pi unit for an aromatic atom when that still fits its valence
// (pyridine-type) and none otherwise (pyrrole-type).
struct ValenceState {
  int bond_valence = 0;
  int valence = 0;  // allowed valence that was selected
};

// Valence state of atom i given its current hydrogen count. nullopt if no
// allowed valence can accommodate the bonds and hydrogens.
std::optional<ValenceState> valence_state(const MolGraph& g, std::size_t i);

// Hydrogen count the valence model would assign to atom i if it were written
// without brackets (ignores explicit_h). nullopt if no valence fits.
std::optional<int> implicit_hydrogen_count(const MolGraph& g, std::size_t i);

// Returns a copy of the graph with implicit hydrogen counts recomputed for
// every atom without explicit_h, then validates every atom.
// Throws ValenceError naming the first offending atom.
MolGraph assign_hydrogens(const MolGraph& g);

// Same as assign_hydrogens but returns nullopt instead of throwing.
std::optional<MolGraph> try_assign_hydrogens(const MolGraph& g);

// ---- SMILES ----

// Parses the supported subset: organic-subset and aromatic atoms, bracket
// atoms with H count and charge, bonds - = # :, branches, ring closures 1-9
// and %nn. Stereo, isotopes, wildcards and '.' are rejected.
MolGraph parse_smiles(std::string_view input);

// Writes a (non-canonical) SMILES string that parses back to an isomorphic
// graph. Traversal starts at atom 0 and visits neighbors in index order.
std::string write_smiles(const MolGraph& g);

}  // namespace hdfp::mol
