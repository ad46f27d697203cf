#include "hdfp/hdc.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "hdfp/error.hpp"
#include "hdfp/fourier.hpp"
#include "hdfp/hash.hpp"

namespace hdfp::hdc {
namespace {

void require_same_dim(const HyperVector& a, const HyperVector& b, const char* op) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorKind::kShape, std::string(op) + ": dimension mismatch (" +
                                       std::to_string(a.dim()) + " vs " +
                                       std::to_string(b.dim()) + ")");
  }
}

}  // namespace

HyperVector::HyperVector(std::vector<double> components)
    : components_(std::move(components)) {
  if (components_.empty()) {
    throw Error(ErrorKind::kInvalidDimension, "hypervector dimension must be positive");
  }
  for (double x : components_) {
    if (!std::isfinite(x)) {
      throw Error(ErrorKind::kInvalidValue, "hypervector component is not finite");
    }
  }
}

HyperVector HyperVector::zeros(std::size_t dim) {
  return HyperVector(std::vector<double>(dim, 0.0));
}

HyperVector HyperVector::impulse(std::size_t dim, std::size_t index) {
  if (index >= dim) throw Error(ErrorKind::kIndexOutOfRange, "impulse index out of range");
  std::vector<double> c(dim, 0.0);
  c[index] = 1.0;
  return HyperVector(std::move(c));
}

double HyperVector::norm() const { return std::sqrt(dot(*this)); }

double HyperVector::dot(const HyperVector& other) const {
  require_same_dim(*this, other, "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    s += components_[i] * other.components_[i];
  }
  return s;
}

HyperVector HyperVector::operator-() const {
  std::vector<double> c(components_);
  for (double& x : c) x = -x;
  return HyperVector(std::move(c));
}

std::uint64_t SeededGenerator::sub_seed(std::string_view label) const {
  return mix64(Fnv1a64().u64(master_seed_).text(label).digest());
}

std::mt19937_64 SeededGenerator::stream(std::string_view label) const {
  return std::mt19937_64(sub_seed(label));
}

HyperVector random_hv(const SeededGenerator& gen, std::string_view label,
                      std::size_t dim) {
  if (dim < 2) {
    throw Error(ErrorKind::kInvalidDimension,
                "random hypervector needs dim >= 2, got " + std::to_string(dim));
  }
  auto rng = gen.stream(label);
  std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(static_cast<double>(dim)));
  std::vector<double> c(dim);
  for (double& x : c) x = normal(rng);
  return HyperVector(std::move(c));
}

HyperVector bind(const HyperVector& u, const HyperVector& v) {
  require_same_dim(u, v, "bind");
  Spectrum fu = forward_transform(u.components());
  const Spectrum fv = forward_transform(v.components());
  for (std::size_t k = 0; k < fu.size(); ++k) fu[k] *= fv[k];
  return HyperVector(inverse_transform(fu, u.dim()));
}

HyperVector unbind(const HyperVector& p, const HyperVector& u) {
  require_same_dim(p, u, "unbind");
  Spectrum fp = forward_transform(p.components());
  const Spectrum fu = forward_transform(u.components());
  for (std::size_t k = 0; k < fp.size(); ++k) fp[k] *= std::conj(fu[k]);
  return HyperVector(inverse_transform(fp, p.dim()));
}

HyperVector bundle(std::span<const HyperVector> vs) {
  if (vs.empty()) throw Error(ErrorKind::kEmptyInput, "bundle of an empty list");
  std::vector<double> acc(vs.front().components().begin(), vs.front().components().end());
  for (std::size_t i = 1; i < vs.size(); ++i) {
    require_same_dim(vs.front(), vs[i], "bundle");
    const auto c = vs[i].components();
    for (std::size_t j = 0; j < acc.size(); ++j) acc[j] += c[j];
  }
  return HyperVector(std::move(acc));
}

Similarity cosine_similarity(const HyperVector& u, const HyperVector& v) {
  require_same_dim(u, v, "cosine_sim");
  const double nu = u.norm();
  const double nv = v.norm();
  if (nu == 0.0 || nv == 0.0) return {0.0, true};
  return {std::clamp(u.dot(v) / (nu * nv), -1.0, 1.0), false};
}

double cosine_sim(const HyperVector& u, const HyperVector& v) {
  return cosine_similarity(u, v).value;
}

HyperVector normalize(const HyperVector& u) {
  const double n = u.norm();
  if (n <= kNormalizeEpsilon) return u;
  std::vector<double> c(u.components().begin(), u.components().end());
  for (double& x : c) x /= n;
  return HyperVector(std::move(c));
}

FpeBase::FpeBase(std::size_t dim, double bandwidth, std::vector<double> phases,
                 HyperVector base)
    : dim_(dim), bandwidth_(bandwidth), phases_(std::move(phases)), base_(std::move(base)) {}

FpeBase FpeBase::generate(const SeededGenerator& gen, std::string_view label,
                          std::size_t dim, double bandwidth) {
  if (dim < 2) {
    throw Error(ErrorKind::kInvalidDimension, "FPE base needs dim >= 2");
  }
  if (!(bandwidth > 0.0) || !std::isfinite(bandwidth)) {
    throw Error(ErrorKind::kInvalidValue, "FPE bandwidth must be positive and finite");
  }
  auto rng = gen.stream(label);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> phases(spectrum_size(dim), 0.0);
  // DC (and Nyquist for even D) stay at phase 0 so every power is real.
  const std::size_t last = (dim % 2 == 0) ? dim / 2 - 1 : dim / 2;
  for (std::size_t k = 1; k <= last; ++k) {
    phases[k] = std::remainder(normal(rng), 2.0 * std::numbers::pi);
    if (phases[k] <= -std::numbers::pi) phases[k] += 2.0 * std::numbers::pi;
  }
  Spectrum half(spectrum_size(dim));
  for (std::size_t k = 0; k < half.size(); ++k) half[k] = std::polar(1.0, phases[k]);
  HyperVector base(inverse_transform(half, dim));
  return FpeBase(dim, bandwidth, std::move(phases), std::move(base));
}

HyperVector fpe_encode(const FpeBase& base, double x) {
  if (!std::isfinite(x)) {
    throw Error(ErrorKind::kInvalidValue, "fractional power encoding of a non-finite value");
  }
  const std::size_t dim = base.dim();
  const auto phases = base.phases();
  const double exponent = x / base.bandwidth();
  std::vector<std::complex<double>> full(dim);
  for (std::size_t k = 0; k < phases.size(); ++k) {
    full[k] = std::polar(1.0, phases[k] * exponent);
  }
  for (std::size_t k = phases.size(); k < dim; ++k) full[k] = std::conj(full[dim - k]);

  const auto values = inverse_transform_complex(full);
  std::vector<double> real(dim);
  double residue = 0.0;
  for (std::size_t j = 0; j < dim; ++j) {
    real[j] = values[j].real();
    residue = std::max(residue, std::abs(values[j].imag()));
  }
  if (residue > kFpeImaginaryTolerance) {
    throw Error(ErrorKind::kNumeric, "fractional power encoding has imaginary residue " +
                                         std::to_string(residue));
  }
  return HyperVector(std::move(real));
}

}  // namespace hdfp::hdc
