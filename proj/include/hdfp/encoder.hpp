#pragma once

// Hyperdimensional molecular fingerprints: dictionary-based node
// initialization, message passing by circular convolution, per-node
// aggregation over all rounds, sum readout, and fractional-power-encoded
// global attributes (graph size and diameter).

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hdfp/hdc.hpp"
#include "hdfp/molgraph.hpp"

namespace hdfp::encoder {

using hdc::HyperVector;

struct EncoderConfig {
  std::size_t dim = 1024;
  int depth = 2;
  std::uint64_t master_seed = 42;
  double sigma_size = 1.0;
  double sigma_diam = 1.0;
  bool include_global_attrs = true;

  static constexpr std::size_t kMinDim = 8;
  static constexpr int kMaxDepth = 16;

  // Throws kConfig when out of range.
  void validate() const;

  friend bool operator==(const EncoderConfig&, const EncoderConfig&) = default;
};

// Largest hydrogen count / heavy degree covered by the dictionaries.
inline constexpr int kMaxDictionaryCount = 8;

// Immutable per-config dictionaries. Entries are drawn under the labels
// "atom:<symbol>", "hs:<n>", "bonds:<n>", "fpe:size" and "fpe:diam".
class DictionarySet {
 public:
  explicit DictionarySet(const EncoderConfig& config);

  const HyperVector& atom(mol::Element e) const;
  // Throws kUnsupportedFeature for counts outside 0..kMaxDictionaryCount.
  const HyperVector& hydrogens(int count) const;
  const HyperVector& bonds(int count) const;
  const hdc::FpeBase& fpe_size() const noexcept { return fpe_size_; }
  const hdc::FpeBase& fpe_diam() const noexcept { return fpe_diam_; }
  std::size_t dim() const noexcept { return dim_; }

 private:
  std::size_t dim_;
  std::vector<HyperVector> atom_;
  std::vector<HyperVector> hs_;
  std::vector<HyperVector> bonds_;
  hdc::FpeBase fpe_size_;
  hdc::FpeBase fpe_diam_;
};

// h_i^(0) = atom(e) (*) hs(h) (*) bonds(degree).
HyperVector init_node(const DictionarySet& dicts, const mol::AtomRecord& atom, int degree);

// One synchronous round: h_i' = normalize(sum_{j in N(i)} h_i (*) h_j).
// Atoms without neighbors keep their state.
std::vector<HyperVector> message_pass(const mol::MolGraph& g,
                                      std::span<const HyperVector> states);

// h_i = normalize(sum_l h_i^(l)). Every history must have the same length.
std::vector<HyperVector> node_aggregate(std::span<const std::vector<HyperVector>> histories);

// r = sum_i h_i.
HyperVector readout(std::span<const HyperVector> node_embeddings);

// g_attr = fpe_size(|V|) + fpe_diam(diam(G)).
HyperVector global_attrs(const DictionarySet& dicts, const mol::MolGraph& g);

struct Fingerprint {
  HyperVector vector;
  EncoderConfig config;
};

// Holds a config and its dictionaries; encode() is const and thread-safe.
class Encoder {
 public:
  explicit Encoder(EncoderConfig config);

  const EncoderConfig& config() const noexcept { return config_; }
  const DictionarySet& dictionaries() const noexcept { return dicts_; }

  Fingerprint encode(const mol::MolGraph& g) const;

 private:
  EncoderConfig config_;
  DictionarySet dicts_;
};

Fingerprint encode(const EncoderConfig& config, const mol::MolGraph& g);

// {"smiles": str, "dim": int, "depth": int, "seed": int, "fp": [float...]}
// with shortest round-trip float formatting.
std::string to_jsonl(const std::string& smiles, const Fingerprint& fp);

}  // namespace hdfp::encoder
