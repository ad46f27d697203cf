#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hdfp/error.hpp"
#include "hdfp/molgraph.hpp"

namespace hdfp::mol {
namespace {

bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

std::optional<Element> aromatic_from_symbol(std::string_view s) {
  if (s == "b") return Element::B;
  if (s == "c") return Element::C;
  if (s == "n") return Element::N;
  if (s == "o") return Element::O;
  if (s == "p") return Element::P;
  if (s == "s") return Element::S;
  return std::nullopt;
}

struct PendingBond {
  BondOrder order;
  std::size_t offset;
};

struct RingOpening {
  std::size_t atom;
  std::optional<BondOrder> order;
  std::size_t offset;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  MolGraph run() {
    if (s_.empty()) throw Error(ErrorKind::kEmptyInput, "empty SMILES string");
    while (pos_ < s_.size()) step();
    finish();
    MolGraph g(std::move(atoms_), std::move(bonds_));
    return assign_hydrogens(g);
  }

 private:
  [[noreturn]] void syntax(const std::string& msg, std::size_t offset, std::string token = {}) {
    throw SmilesError(ErrorKind::kSyntax, msg, offset, std::move(token));
  }
  [[noreturn]] void unsupported(const std::string& msg, std::size_t offset, std::string token) {
    throw SmilesError(ErrorKind::kUnsupportedFeature, msg, offset, std::move(token));
  }

  void step() {
    const char c = s_[pos_];
    if (c == '[') {
      add_atom(parse_bracket_atom());
    } else if (is_upper(c) || is_lower(c)) {
      add_atom(parse_organic_atom());
    } else if (c == '(') {
      if (!prev_) syntax("branch without a preceding atom", pos_, "(");
      if (pending_) syntax("bond symbol before a branch", pending_->offset);
      if (branch_opened_) syntax("branch must start with an atom", pos_, "(");
      branches_.push_back({*prev_, pos_});
      branch_opened_ = true;
      ++pos_;
    } else if (c == ')') {
      if (branches_.empty()) syntax("unmatched closing parenthesis", pos_, ")");
      if (branch_opened_) syntax("empty branch", pos_, ")");
      if (pending_) syntax("dangling bond symbol", pending_->offset, std::string(1, s_[pending_->offset]));
      prev_ = branches_.back().first;
      branches_.pop_back();
      ++pos_;
    } else if (c == '-' || c == '=' || c == '#' || c == ':') {
      if (pending_) syntax("two consecutive bond symbols", pos_, std::string(1, c));
      if (!prev_) syntax("bond symbol without a preceding atom", pos_, std::string(1, c));
      const BondOrder order = c == '-'   ? BondOrder::kSingle
                              : c == '=' ? BondOrder::kDouble
                              : c == '#' ? BondOrder::kTriple
                                         : BondOrder::kAromatic;
      pending_ = PendingBond{order, pos_};
      ++pos_;
    } else if (c == '/' || c == '\\') {
      unsupported("stereo bond markers are not supported", pos_, std::string(1, c));
    } else if (c == '$') {
      unsupported("quadruple bonds are not supported", pos_, "$");
    } else if (is_digit(c) || c == '%') {
      ring_closure();
    } else if (c == '.') {
      unsupported("multi-fragment molecules are not supported", pos_, ".");
    } else if (c == '*') {
      unsupported("wildcard atoms are not supported", pos_, "*");
    } else if (c == '@') {
      unsupported("chirality markers are not supported", pos_, "@");
    } else {
      syntax("unexpected character", pos_, std::string(1, c));
    }
  }

  AtomRecord parse_organic_atom() {
    const std::size_t start = pos_;
    const char c = s_[pos_];
    if (is_upper(c)) {
      if (pos_ + 1 < s_.size()) {
        const std::string_view two = s_.substr(pos_, 2);
        if (two == "Cl" || two == "Br") {
          pos_ += 2;
          return AtomRecord{*element_from_symbol(two)};
        }
      }
      const auto e = element_from_symbol(s_.substr(pos_, 1));
      if (!e) {
        std::size_t end = pos_ + 1;
        if (end < s_.size() && is_lower(s_[end])) ++end;
        unsupported("unsupported element", start, std::string(s_.substr(start, end - start)));
      }
      ++pos_;
      return AtomRecord{*e};
    }
    const auto e = aromatic_from_symbol(s_.substr(pos_, 1));
    if (!e) unsupported("unsupported aromatic element", start, std::string(1, c));
    ++pos_;
    AtomRecord a{*e};
    a.aromatic = true;
    return a;
  }

  AtomRecord parse_bracket_atom() {
    const std::size_t open = pos_;
    ++pos_;  // '['
    auto at_end = [&] { return pos_ >= s_.size(); };
    if (at_end()) syntax("unterminated bracket atom", open, "[");

    if (is_digit(s_[pos_])) {
      const std::size_t start = pos_;
      while (!at_end() && is_digit(s_[pos_])) ++pos_;
      unsupported("isotopes are not supported", start, std::string(s_.substr(start, pos_ - start)));
    }

    AtomRecord atom;
    atom.explicit_h = true;
    const std::size_t sym_start = pos_;
    if (at_end()) syntax("unterminated bracket atom", open, "[");
    const char c = s_[pos_];
    if (c == '*') unsupported("wildcard atoms are not supported", pos_, "*");
    if (is_upper(c)) {
      std::size_t end = pos_ + 1;
      if (end < s_.size() && is_lower(s_[end])) ++end;
      const std::string_view sym = s_.substr(pos_, end - pos_);
      const auto e = element_from_symbol(sym);
      if (!e) {
        unsupported(sym == "H" ? "explicit hydrogen atoms are not supported" : "unsupported element",
                    sym_start, std::string(sym));
      }
      atom.element = *e;
      pos_ = end;
    } else if (is_lower(c)) {
      std::size_t end = pos_ + 1;
      if (end < s_.size() && is_lower(s_[end])) ++end;
      const std::string_view sym = s_.substr(pos_, end - pos_);
      const auto e = aromatic_from_symbol(sym);
      if (!e) unsupported("unsupported aromatic element", sym_start, std::string(sym));
      atom.element = *e;
      atom.aromatic = true;
      pos_ = end;
    } else {
      syntax("expected an element symbol in bracket atom", pos_, std::string(1, c));
    }

    if (!at_end() && s_[pos_] == '@') unsupported("chirality markers are not supported", pos_, "@");

    if (!at_end() && s_[pos_] == 'H') {
      ++pos_;
      int h = 1;
      if (!at_end() && is_digit(s_[pos_])) {
        h = 0;
        while (!at_end() && is_digit(s_[pos_])) h = h * 10 + (s_[pos_++] - '0');
      }
      atom.h_count = h;
    }

    if (!at_end() && (s_[pos_] == '+' || s_[pos_] == '-')) {
      const char sign_char = s_[pos_];
      const int sign = sign_char == '+' ? 1 : -1;
      ++pos_;
      int magnitude = 1;
      if (!at_end() && is_digit(s_[pos_])) {
        magnitude = 0;
        while (!at_end() && is_digit(s_[pos_])) magnitude = magnitude * 10 + (s_[pos_++] - '0');
      } else {
        while (!at_end() && s_[pos_] == sign_char) {
          ++magnitude;
          ++pos_;
        }
      }
      atom.formal_charge = sign * magnitude;
    }

    if (!at_end() && s_[pos_] == ':') unsupported("atom classes are not supported", pos_, ":");
    if (at_end()) syntax("unterminated bracket atom", open, "[");
    if (s_[pos_] != ']') syntax("unexpected character in bracket atom", pos_, std::string(1, s_[pos_]));
    ++pos_;
    return atom;
  }

  BondOrder default_order(std::size_t a, std::size_t b) const {
    return atoms_[a].aromatic && atoms_[b].aromatic ? BondOrder::kAromatic : BondOrder::kSingle;
  }

  void add_bond(std::size_t a, std::size_t b, BondOrder order, std::size_t offset) {
    for (const Bond& existing : bonds_) {
      if ((existing.a == a && existing.b == b) || (existing.a == b && existing.b == a)) {
        syntax("duplicate bond", offset);
      }
    }
    bonds_.push_back({a, b, order});
  }

  void add_atom(AtomRecord atom) {
    const std::size_t idx = atoms_.size();
    atoms_.push_back(atom);
    if (prev_) {
      const BondOrder order = pending_ ? pending_->order : default_order(*prev_, idx);
      add_bond(*prev_, idx, order, pending_ ? pending_->offset : pos_);
    } else if (pending_) {
      syntax("bond symbol without a preceding atom", pending_->offset);
    }
    pending_.reset();
    prev_ = idx;
    branch_opened_ = false;
  }

  void ring_closure() {
    const std::size_t start = pos_;
    int number = 0;
    if (s_[pos_] == '%') {
      if (pos_ + 2 >= s_.size() || !is_digit(s_[pos_ + 1]) || !is_digit(s_[pos_ + 2])) {
        syntax("'%' must be followed by two digits", start, "%");
      }
      number = (s_[pos_ + 1] - '0') * 10 + (s_[pos_ + 2] - '0');
      pos_ += 3;
    } else {
      number = s_[pos_] - '0';
      ++pos_;
    }
    const std::string token(s_.substr(start, pos_ - start));
    if (!prev_) syntax("ring closure without a preceding atom", start, token);

    auto it = rings_.find(number);
    if (it == rings_.end()) {
      rings_[number] = RingOpening{*prev_, pending_ ? std::optional(pending_->order) : std::nullopt,
                                   start};
      pending_.reset();
      return;
    }
    const RingOpening open = it->second;
    rings_.erase(it);
    if (open.atom == *prev_) syntax("ring closure from an atom to itself", start, token);
    std::optional<BondOrder> order = open.order;
    if (pending_) {
      if (order && *order != pending_->order) {
        syntax("conflicting bond orders on ring closure", start, token);
      }
      order = pending_->order;
    }
    add_bond(open.atom, *prev_, order.value_or(default_order(open.atom, *prev_)), start);
    pending_.reset();
  }

  void finish() {
    if (pending_) syntax("dangling bond symbol at end of input", pending_->offset, std::string(1, s_[pending_->offset]));
    if (!branches_.empty()) syntax("unclosed branch", branches_.back().second, "(");
    if (!rings_.empty()) {
      const auto& [number, open] = *rings_.begin();
      const std::size_t len = s_[open.offset] == '%' ? 3 : 1;
      syntax("unclosed ring " + std::to_string(number), open.offset,
             std::string(s_.substr(open.offset, len)));
    }
    if (atoms_.empty()) throw Error(ErrorKind::kEmptyInput, "SMILES contains no atoms");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::vector<AtomRecord> atoms_;
  std::vector<Bond> bonds_;
  std::optional<std::size_t> prev_;
  std::optional<PendingBond> pending_;
  std::vector<std::pair<std::size_t, std::size_t>> branches_;  // (atom, offset)
  bool branch_opened_ = false;
  std::map<int, RingOpening> rings_;
};

}  // namespace

MolGraph parse_smiles(std::string_view input) { return Parser(input).run(); }

}  // namespace hdfp::mol
