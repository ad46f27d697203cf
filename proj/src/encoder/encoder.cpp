#include "hdfp/encoder.hpp"

#include <complex>
#include <string>

#include "hdfp/error.hpp"
#include "hdfp/fourier.hpp"

namespace hdfp::encoder {

using hdc::Spectrum;

void EncoderConfig::validate() const {
  if (dim < kMinDim) {
    throw Error(ErrorKind::kConfig, "dim must be at least " + std::to_string(kMinDim));
  }
  if (depth < 0 || depth > kMaxDepth) {
    throw Error(ErrorKind::kConfig, "depth must be in 0.." + std::to_string(kMaxDepth));
  }
  if (!(sigma_size > 0.0) || !(sigma_diam > 0.0)) {
    throw Error(ErrorKind::kConfig, "FPE bandwidths must be positive");
  }
}

namespace {

std::vector<HyperVector> draw_counts(const hdc::SeededGenerator& gen, const std::string& prefix,
                                     std::size_t dim) {
  std::vector<HyperVector> out;
  out.reserve(kMaxDictionaryCount + 1);
  for (int n = 0; n <= kMaxDictionaryCount; ++n) {
    out.push_back(hdc::random_hv(gen, prefix + std::to_string(n), dim));
  }
  return out;
}

const EncoderConfig& validated(const EncoderConfig& c) {
  c.validate();
  return c;
}

}  // namespace

DictionarySet::DictionarySet(const EncoderConfig& config)
    : dim_(validated(config).dim),
      hs_(draw_counts(hdc::SeededGenerator(config.master_seed), "hs:", config.dim)),
      bonds_(draw_counts(hdc::SeededGenerator(config.master_seed), "bonds:", config.dim)),
      fpe_size_(hdc::FpeBase::generate(hdc::SeededGenerator(config.master_seed), "fpe:size",
                                       config.dim, config.sigma_size)),
      fpe_diam_(hdc::FpeBase::generate(hdc::SeededGenerator(config.master_seed), "fpe:diam",
                                       config.dim, config.sigma_diam)) {
  const hdc::SeededGenerator gen(config.master_seed);
  atom_.reserve(mol::kSupportedElements.size());
  for (mol::Element e : mol::kSupportedElements) {
    atom_.push_back(hdc::random_hv(gen, "atom:" + std::string(mol::symbol(e)), dim_));
  }
}

const HyperVector& DictionarySet::atom(mol::Element e) const {
  return atom_.at(static_cast<std::size_t>(e));
}

const HyperVector& DictionarySet::hydrogens(int count) const {
  if (count < 0 || count > kMaxDictionaryCount) {
    throw Error(ErrorKind::kUnsupportedFeature,
                "hydrogen count " + std::to_string(count) + " outside dictionary range 0.." +
                    std::to_string(kMaxDictionaryCount));
  }
  return hs_[static_cast<std::size_t>(count)];
}

const HyperVector& DictionarySet::bonds(int count) const {
  if (count < 0 || count > kMaxDictionaryCount) {
    throw Error(ErrorKind::kUnsupportedFeature,
                "heavy degree " + std::to_string(count) + " outside dictionary range 0.." +
                    std::to_string(kMaxDictionaryCount));
  }
  return bonds_[static_cast<std::size_t>(count)];
}

HyperVector init_node(const DictionarySet& dicts, const mol::AtomRecord& atom, int degree) {
  const HyperVector& e = dicts.atom(atom.element);
  const HyperVector& h = dicts.hydrogens(atom.h_count);
  const HyperVector& b = dicts.bonds(degree);
  Spectrum acc = hdc::forward_transform(e.components());
  const Spectrum fh = hdc::forward_transform(h.components());
  const Spectrum fb = hdc::forward_transform(b.components());
  for (std::size_t k = 0; k < acc.size(); ++k) acc[k] *= fh[k] * fb[k];
  return HyperVector(hdc::inverse_transform(acc, dicts.dim()));
}

std::vector<HyperVector> message_pass(const mol::MolGraph& g,
                                      std::span<const HyperVector> states) {
  if (states.size() != g.size()) {
    throw Error(ErrorKind::kShape, "message passing: " + std::to_string(states.size()) +
                                       " states for " + std::to_string(g.size()) + " atoms");
  }
  const std::size_t dim = states.front().dim();
  std::vector<Spectrum> spectra;
  spectra.reserve(states.size());
  for (const HyperVector& s : states) {
    if (s.dim() != dim) throw Error(ErrorKind::kShape, "message passing: ragged state dimensions");
    spectra.push_back(hdc::forward_transform(s.components()));
  }

  // Binding is bilinear, so sum_j h_i (*) h_j == h_i (*) (sum_j h_j); the
  // neighbor sum is formed in the frequency domain.
  std::vector<HyperVector> next;
  next.reserve(states.size());
  Spectrum acc(hdc::spectrum_size(dim));
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto nbrs = g.neighbors(i);
    if (nbrs.empty()) {
      next.push_back(states[i]);
      continue;
    }
    std::fill(acc.begin(), acc.end(), std::complex<double>(0.0, 0.0));
    for (const mol::Neighbor& nb : nbrs) {
      const Spectrum& sj = spectra[nb.atom];
      for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += sj[k];
    }
    const Spectrum& si = spectra[i];
    for (std::size_t k = 0; k < acc.size(); ++k) acc[k] *= si[k];
    next.push_back(hdc::normalize(HyperVector(hdc::inverse_transform(acc, dim))));
  }
  return next;
}

std::vector<HyperVector> node_aggregate(std::span<const std::vector<HyperVector>> histories) {
  std::vector<HyperVector> out;
  out.reserve(histories.size());
  for (const auto& history : histories) {
    if (history.empty() || history.size() != histories.front().size()) {
      throw Error(ErrorKind::kShape, "node histories must all have the same non-zero length");
    }
    out.push_back(hdc::normalize(hdc::bundle(history)));
  }
  return out;
}

HyperVector readout(std::span<const HyperVector> node_embeddings) {
  if (node_embeddings.empty()) throw Error(ErrorKind::kEmptyInput, "readout of an empty molecule");
  return hdc::bundle(node_embeddings);
}

HyperVector global_attrs(const DictionarySet& dicts, const mol::MolGraph& g) {
  const std::vector<HyperVector> parts = {
      hdc::fpe_encode(dicts.fpe_size(), static_cast<double>(g.size())),
      hdc::fpe_encode(dicts.fpe_diam(), static_cast<double>(mol::diameter(g)))};
  return hdc::bundle(parts);
}

Encoder::Encoder(EncoderConfig config) : config_(config), dicts_(config_) {}

Fingerprint Encoder::encode(const mol::MolGraph& g) const {
  const std::size_t n = g.size();
  std::vector<HyperVector> states;
  states.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    states.push_back(init_node(dicts_, g.atoms()[i], mol::heavy_degree(g, i)));
  }

  std::vector<std::vector<HyperVector>> histories(n);
  for (std::size_t i = 0; i < n; ++i) {
    histories[i].reserve(static_cast<std::size_t>(config_.depth) + 1);
    histories[i].push_back(states[i]);
  }
  for (int round = 0; round < config_.depth; ++round) {
    states = message_pass(g, states);
    for (std::size_t i = 0; i < n; ++i) histories[i].push_back(states[i]);
  }

  const HyperVector structural = readout(node_aggregate(histories));
  if (!config_.include_global_attrs) return {hdc::normalize(structural), config_};

  const std::vector<HyperVector> merged = {hdc::normalize(structural),
                                           hdc::normalize(global_attrs(dicts_, g))};
  return {hdc::normalize(hdc::bundle(merged)), config_};
}

Fingerprint encode(const EncoderConfig& config, const mol::MolGraph& g) {
  return Encoder(config).encode(g);
}

}  // namespace hdfp::encoder
