#pragma once

// Hashed circular (Morgan-style) fingerprint folded into a bit vector.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "hdfp/molgraph.hpp"

namespace hdfp::baseline {

class BitFingerprint {
 public:
  // Throws kConfig for nbits < 8.
  explicit BitFingerprint(std::size_t nbits);

  std::size_t nbits() const noexcept { return nbits_; }
  void set(std::size_t bit);
  bool test(std::size_t bit) const;
  std::size_t popcount() const;
  std::vector<std::size_t> set_bits() const;
  // {0,1}^nbits as reals, for kernels over Euclidean distance.
  std::vector<double> to_dense() const;
  const std::vector<std::uint64_t>& words() const noexcept { return words_; }

  friend bool operator==(const BitFingerprint&, const BitFingerprint&) = default;

 private:
  std::size_t nbits_;
  std::vector<std::uint64_t> words_;
};

struct MorganConfig {
  int radius = 2;
  std::size_t nbits = 1024;

  static constexpr int kMaxRadius = 8;
  static constexpr std::size_t kMinBits = 8;

  void validate() const;
};

// FNV-1a of (atomic number, heavy degree, h_count, formal charge, isotope=0).
std::uint64_t atom_invariant(const mol::AtomRecord& atom, int degree);

// Every (atom, radius) identifier for r = 0..radius, atom-major within each
// radius. Identifier r+1 of atom i hashes (id_r(i), sorted (bond code, id_r(j))).
std::vector<std::uint64_t> morgan_identifiers(const MorganConfig& config, const mol::MolGraph& g);

// Sets bit (id mod nbits) for every identifier.
BitFingerprint morgan_encode(const MorganConfig& config, const mol::MolGraph& g);

// |a & b| / |a | b|; 1 when both are empty. Throws kShape on length mismatch.
double tanimoto(const BitFingerprint& a, const BitFingerprint& b);

// {"smiles": str, "nbits": int, "radius": int, "bits": [int...]}
std::string to_jsonl(const std::string& smiles, const MorganConfig& config,
                     const BitFingerprint& fp);

}  // namespace hdfp::baseline
