#include "hdfp/morgan.hpp"

#include <algorithm>
#include <bit>
#include <nlohmann/json.hpp>

#include "hdfp/error.hpp"
#include "hdfp/hash.hpp"

namespace hdfp::baseline {

BitFingerprint::BitFingerprint(std::size_t nbits) : nbits_(nbits), words_((nbits + 63) / 64, 0) {
  if (nbits < MorganConfig::kMinBits) {
    throw Error(ErrorKind::kConfig, "bit fingerprints need at least 8 bits");
  }
}

void BitFingerprint::set(std::size_t bit) {
  if (bit >= nbits_) throw Error(ErrorKind::kIndexOutOfRange, "bit index out of range");
  words_[bit / 64] |= std::uint64_t{1} << (bit % 64);
}

bool BitFingerprint::test(std::size_t bit) const {
  if (bit >= nbits_) throw Error(ErrorKind::kIndexOutOfRange, "bit index out of range");
  return (words_[bit / 64] >> (bit % 64)) & 1u;
}

std::size_t BitFingerprint::popcount() const {
  std::size_t n = 0;
  for (std::uint64_t w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::vector<std::size_t> BitFingerprint::set_bits() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nbits_; ++i) {
    if (test(i)) out.push_back(i);
  }
  return out;
}

std::vector<double> BitFingerprint::to_dense() const {
  std::vector<double> out(nbits_, 0.0);
  for (std::size_t i = 0; i < nbits_; ++i) out[i] = test(i) ? 1.0 : 0.0;
  return out;
}

void MorganConfig::validate() const {
  if (radius < 0 || radius > kMaxRadius) {
    throw Error(ErrorKind::kConfig, "radius must be in 0.." + std::to_string(kMaxRadius));
  }
  if (nbits < kMinBits) throw Error(ErrorKind::kConfig, "nbits must be at least 8");
}

std::uint64_t atom_invariant(const mol::AtomRecord& atom, int degree) {
  return Fnv1a64()
      .i32(mol::atomic_number(atom.element))
      .i32(degree)
      .i32(atom.h_count)
      .i32(atom.formal_charge)
      .i32(0)  // isotope
      .digest();
}

std::vector<std::uint64_t> morgan_identifiers(const MorganConfig& config, const mol::MolGraph& g) {
  config.validate();
  const std::size_t n = g.size();
  std::vector<std::uint64_t> ids(n), next(n), all;
  all.reserve(n * static_cast<std::size_t>(config.radius + 1));
  for (std::size_t i = 0; i < n; ++i) ids[i] = atom_invariant(g.atoms()[i], mol::heavy_degree(g, i));
  all.insert(all.end(), ids.begin(), ids.end());

  std::vector<std::pair<int, std::uint64_t>> env;
  for (int r = 1; r <= config.radius; ++r) {
    for (std::size_t i = 0; i < n; ++i) {
      env.clear();
      for (const mol::Neighbor& nb : g.neighbors(i)) env.emplace_back(mol::bond_code(nb.order), ids[nb.atom]);
      std::sort(env.begin(), env.end());
      Fnv1a64 h;
      h.u64(ids[i]).u32(static_cast<std::uint32_t>(env.size()));
      for (const auto& [code, id] : env) h.u32(static_cast<std::uint32_t>(code)).u64(id);
      next[i] = h.digest();
    }
    ids.swap(next);
    all.insert(all.end(), ids.begin(), ids.end());
  }
  return all;
}

BitFingerprint morgan_encode(const MorganConfig& config, const mol::MolGraph& g) {
  BitFingerprint fp(config.nbits);
  for (std::uint64_t id : morgan_identifiers(config, g)) fp.set(id % config.nbits);
  return fp;
}

double tanimoto(const BitFingerprint& a, const BitFingerprint& b) {
  if (a.nbits() != b.nbits()) throw Error(ErrorKind::kShape, "tanimoto: bit length mismatch");
  std::size_t both = 0, either = 0;
  for (std::size_t w = 0; w < a.words().size(); ++w) {
    both += static_cast<std::size_t>(std::popcount(a.words()[w] & b.words()[w]));
    either += static_cast<std::size_t>(std::popcount(a.words()[w] | b.words()[w]));
  }
  if (either == 0) return 1.0;
  return static_cast<double>(both) / static_cast<double>(either);
}

std::string to_jsonl(const std::string& smiles, const MorganConfig& config,
                     const BitFingerprint& fp) {
  nlohmann::ordered_json j;
  j["smiles"] = smiles;
  j["nbits"] = config.nbits;
  j["radius"] = config.radius;
  j["bits"] = fp.set_bits();
  return j.dump();
}

}  // namespace hdfp::baseline
