#include "hdfp/molgraph.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "hdfp/error.hpp"
#include "hdfp/hash.hpp"

namespace hdfp::mol {

int atomic_number(Element e) {
  switch (e) {
    case Element::B: return 5;
    case Element::C: return 6;
    case Element::N: return 7;
    case Element::O: return 8;
    case Element::P: return 15;
    case Element::S: return 16;
    case Element::F: return 9;
    case Element::Cl: return 17;
    case Element::Br: return 35;
    case Element::I: return 53;
  }
  return 0;
}

std::string_view symbol(Element e) {
  switch (e) {
    case Element::B: return "B";
    case Element::C: return "C";
    case Element::N: return "N";
    case Element::O: return "O";
    case Element::P: return "P";
    case Element::S: return "S";
    case Element::F: return "F";
    case Element::Cl: return "Cl";
    case Element::Br: return "Br";
    case Element::I: return "I";
  }
  return "?";
}

std::optional<Element> element_from_symbol(std::string_view s) {
  for (Element e : kSupportedElements) {
    if (symbol(e) == s) return e;
  }
  return std::nullopt;
}

bool can_be_aromatic(Element e) {
  switch (e) {
    case Element::B:
    case Element::C:
    case Element::N:
    case Element::O:
    case Element::P:
    case Element::S:
      return true;
    default:
      return false;
  }
}

double bond_order_value(BondOrder o) {
  switch (o) {
    case BondOrder::kSingle: return 1.0;
    case BondOrder::kDouble: return 2.0;
    case BondOrder::kTriple: return 3.0;
    case BondOrder::kAromatic: return 1.5;
  }
  return 0.0;
}

MolGraph::MolGraph(std::vector<AtomRecord> atoms, std::vector<Bond> bonds)
    : atoms_(std::move(atoms)), bonds_(std::move(bonds)), adjacency_(atoms_.size()) {
  if (atoms_.empty()) throw Error(ErrorKind::kEmptyInput, "molecule has no atoms");
  for (const AtomRecord& a : atoms_) {
    if (a.h_count < 0) throw Error(ErrorKind::kInvalidValue, "negative hydrogen count");
  }
  for (Bond& b : bonds_) {
    if (b.a >= atoms_.size() || b.b >= atoms_.size()) {
      throw Error(ErrorKind::kIndexOutOfRange, "bond endpoint out of range");
    }
    if (b.a == b.b) throw Error(ErrorKind::kSyntax, "bond from an atom to itself");
    if (b.a > b.b) std::swap(b.a, b.b);
    for (const Neighbor& n : adjacency_[b.a]) {
      if (n.atom == b.b) {
        throw Error(ErrorKind::kSyntax, "duplicate bond between atoms " +
                                            std::to_string(b.a) + " and " +
                                            std::to_string(b.b));
      }
    }
    adjacency_[b.a].push_back({b.b, b.order});
    adjacency_[b.b].push_back({b.a, b.order});
  }

  // Connectivity check.
  std::vector<bool> seen(atoms_.size(), false);
  std::deque<std::size_t> queue{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    for (const Neighbor& n : adjacency_[u]) {
      if (!seen[n.atom]) {
        seen[n.atom] = true;
        ++reached;
        queue.push_back(n.atom);
      }
    }
  }
  if (reached != atoms_.size()) {
    throw Error(ErrorKind::kUnsupportedFeature,
                "molecule has more than one fragment; only connected graphs are supported");
  }
}

const AtomRecord& MolGraph::atom(std::size_t i) const {
  if (i >= atoms_.size()) throw Error(ErrorKind::kIndexOutOfRange, "atom index out of range");
  return atoms_[i];
}

std::span<const Neighbor> MolGraph::neighbors(std::size_t i) const {
  if (i >= atoms_.size()) throw Error(ErrorKind::kIndexOutOfRange, "atom index out of range");
  return adjacency_[i];
}

std::optional<BondOrder> MolGraph::bond_between(std::size_t i, std::size_t j) const {
  for (const Neighbor& n : neighbors(i)) {
    if (n.atom == j) return n.order;
  }
  return std::nullopt;
}

int heavy_degree(const MolGraph& g, std::size_t i) {
  return static_cast<int>(g.neighbors(i).size());
}

std::vector<int> distance_matrix(const MolGraph& g) {
  const std::size_t n = g.size();
  std::vector<int> dist(n * n, -1);
  std::vector<std::size_t> queue(n);
  for (std::size_t s = 0; s < n; ++s) {
    int* row = dist.data() + s * n;
    row[s] = 0;
    std::size_t head = 0, tail = 0;
    queue[tail++] = s;
    while (head < tail) {
      const std::size_t u = queue[head++];
      for (const Neighbor& nb : g.neighbors(u)) {
        if (row[nb.atom] < 0) {
          row[nb.atom] = row[u] + 1;
          queue[tail++] = nb.atom;
        }
      }
    }
  }
  return dist;
}

int diameter(const MolGraph& g) {
  const auto d = distance_matrix(g);
  return d.empty() ? 0 : *std::max_element(d.begin(), d.end());
}

std::int64_t wiener_index(const MolGraph& g) {
  const auto d = distance_matrix(g);
  const std::size_t n = g.size();
  std::int64_t total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) total += d[i * n + j];
  }
  return total;
}

MolGraph permute(const MolGraph& g, std::span<const std::size_t> perm) {
  const std::size_t n = g.size();
  if (perm.size() != n) throw Error(ErrorKind::kShape, "permutation length differs from atom count");
  std::vector<bool> hit(n, false);
  for (std::size_t p : perm) {
    if (p >= n || hit[p]) throw Error(ErrorKind::kInvalidValue, "not a permutation of atom indices");
    hit[p] = true;
  }
  std::vector<AtomRecord> atoms(n);
  for (std::size_t i = 0; i < n; ++i) atoms[perm[i]] = g.atoms()[i];
  std::vector<Bond> bonds;
  bonds.reserve(g.bonds().size());
  for (const Bond& b : g.bonds()) bonds.push_back({perm[b.a], perm[b.b], b.order});
  return MolGraph(std::move(atoms), std::move(bonds));
}

double heteroatom_fraction(const MolGraph& g) {
  const auto hetero = std::count_if(g.atoms().begin(), g.atoms().end(),
                                    [](const AtomRecord& a) { return a.element != Element::C; });
  return static_cast<double>(hetero) / static_cast<double>(g.size());
}

std::uint64_t graph_signature(const MolGraph& g) {
  const std::size_t n = g.size();
  std::vector<std::uint64_t> color(n), next(n);
  for (std::size_t i = 0; i < n; ++i) {
    const AtomRecord& a = g.atoms()[i];
    color[i] = Fnv1a64()
                   .i32(atomic_number(a.element))
                   .i32(a.h_count)
                   .i32(a.formal_charge)
                   .i32(a.aromatic ? 1 : 0)
                   .i32(heavy_degree(g, i))
                   .digest();
  }
  auto distinct = [](std::vector<std::uint64_t> c) {
    std::sort(c.begin(), c.end());
    return static_cast<std::size_t>(std::unique(c.begin(), c.end()) - c.begin());
  };
  std::size_t classes = distinct(color);
  std::vector<std::pair<int, std::uint64_t>> env;
  // Refine until the color partition stops splitting (at most n rounds).
  for (std::size_t round = 0; round < n; ++round) {
    for (std::size_t i = 0; i < n; ++i) {
      env.clear();
      for (const Neighbor& nb : g.neighbors(i)) env.emplace_back(bond_code(nb.order), color[nb.atom]);
      std::sort(env.begin(), env.end());
      Fnv1a64 h;
      h.u64(color[i]);
      for (const auto& [code, c] : env) h.i32(code).u64(c);
      next[i] = h.digest();
    }
    color.swap(next);
    const std::size_t refined = distinct(color);
    if (refined == classes) break;
    classes = refined;
  }
  std::sort(color.begin(), color.end());
  Fnv1a64 h;
  h.u64(n).u64(g.bonds().size());
  for (std::uint64_t c : color) h.u64(c);
  return mix64(h.digest());
}

}  // namespace hdfp::mol
