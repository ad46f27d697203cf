#include <algorithm>
#include <cstdlib>
#include <string>
#include <vector>

#include "hdfp/molgraph.hpp"

namespace hdfp::mol {
namespace {

struct RingEvent {
  std::size_t bond;  // index into g.bonds()
  bool opening;
};

class Writer {
 public:
  explicit Writer(const MolGraph& g)
      : g_(g), visited_(g.size(), false), used_bond_(g.bonds().size(), false),
        children_(g.size()), events_(g.size()) {}

  std::string run() {
    plan(0);
    write(0, std::nullopt);
    return out_;
  }

 private:
  std::size_t bond_index(std::size_t a, std::size_t b) const {
    const auto lo = std::min(a, b), hi = std::max(a, b);
    for (std::size_t k = 0; k < g_.bonds().size(); ++k) {
      if (g_.bonds()[k].a == lo && g_.bonds()[k].b == hi) return k;
    }
    return g_.bonds().size();
  }

  void plan(std::size_t u) {
    visited_[u] = true;
    std::vector<Neighbor> nbrs(g_.neighbors(u).begin(), g_.neighbors(u).end());
    std::sort(nbrs.begin(), nbrs.end(),
              [](const Neighbor& x, const Neighbor& y) { return x.atom < y.atom; });
    for (const Neighbor& nb : nbrs) {
      const std::size_t k = bond_index(u, nb.atom);
      if (used_bond_[k]) continue;
      used_bond_[k] = true;
      if (!visited_[nb.atom]) {
        children_[u].push_back(nb.atom);
        plan(nb.atom);
      } else {
        // Back edge to an ancestor: the ancestor opens, this atom closes.
        events_[nb.atom].push_back({k, true});
        events_[u].push_back({k, false});
      }
    }
  }

  std::string bond_text(std::size_t a, std::size_t b, BondOrder order) const {
    const bool both_aromatic = g_.atoms()[a].aromatic && g_.atoms()[b].aromatic;
    switch (order) {
      case BondOrder::kSingle: return both_aromatic ? "-" : "";
      case BondOrder::kDouble: return "=";
      case BondOrder::kTriple: return "#";
      case BondOrder::kAromatic: return both_aromatic ? "" : ":";
    }
    return "";
  }

  std::string atom_text(std::size_t i) const {
    const AtomRecord& a = g_.atoms()[i];
    std::string sym(symbol(a.element));
    if (a.aromatic) {
      for (char& c : sym) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    const auto implicit = implicit_hydrogen_count(g_, i);
    if (a.formal_charge == 0 && implicit && *implicit == a.h_count) return sym;
    std::string text = "[" + sym;
    if (a.h_count > 0) text += "H" + (a.h_count > 1 ? std::to_string(a.h_count) : "");
    if (a.formal_charge != 0) {
      text += a.formal_charge > 0 ? "+" : "-";
      if (std::abs(a.formal_charge) > 1) text += std::to_string(std::abs(a.formal_charge));
    }
    return text + "]";
  }

  std::string ring_label(int digit) const {
    return digit < 10 ? std::to_string(digit) : "%" + std::to_string(digit);
  }

  void write(std::size_t u, std::optional<std::size_t> parent) {
    if (parent) out_ += bond_text(*parent, u, *g_.bond_between(*parent, u));
    out_ += atom_text(u);
    for (const RingEvent& ev : events_[u]) {
      const Bond& b = g_.bonds()[ev.bond];
      if (ev.opening) {
        int digit = 1;
        while (std::find(open_digits_.begin(), open_digits_.end(), digit) != open_digits_.end()) {
          ++digit;
        }
        open_digits_.push_back(digit);
        digit_of_bond_.emplace_back(ev.bond, digit);
        out_ += bond_text(b.a, b.b, b.order) + ring_label(digit);
      } else {
        auto it = std::find_if(digit_of_bond_.begin(), digit_of_bond_.end(),
                               [&](const auto& p) { return p.first == ev.bond; });
        out_ += ring_label(it->second);
        open_digits_.erase(std::find(open_digits_.begin(), open_digits_.end(), it->second));
        digit_of_bond_.erase(it);
      }
    }
    const auto& kids = children_[u];
    for (std::size_t c = 0; c < kids.size(); ++c) {
      const bool last = c + 1 == kids.size();
      if (!last) out_ += "(";
      write(kids[c], u);
      if (!last) out_ += ")";
    }
  }

  const MolGraph& g_;
  std::vector<bool> visited_;
  std::vector<bool> used_bond_;
  std::vector<std::vector<std::size_t>> children_;
  std::vector<std::vector<RingEvent>> events_;
  std::vector<int> open_digits_;
  std::vector<std::pair<std::size_t, int>> digit_of_bond_;
  std::string out_;
};

}  // namespace

std::string write_smiles(const MolGraph& g) { return Writer(g).run(); }

}  // namespace hdfp::mol
