#pragma once

// Holographic reduced representations: dense real hypervectors with
// circular-convolution binding, additive bundling and fractional power
// encoding of scalars.

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

namespace hdfp::hdc {

class HyperVector {
 public:
  // Throws kInvalidDimension for an empty vector and kInvalidValue if any
  // component is NaN or infinite.
  explicit HyperVector(std::vector<double> components);

  static HyperVector zeros(std::size_t dim);
  // Standard basis vector e_index; impulse(dim) is the identity of bind().
  static HyperVector impulse(std::size_t dim, std::size_t index = 0);

  std::size_t dim() const noexcept { return components_.size(); }
  double operator[](std::size_t i) const { return components_[i]; }
  std::span<const double> components() const noexcept { return components_; }

  double norm() const;
  double dot(const HyperVector& other) const;
  HyperVector operator-() const;

  friend bool operator==(const HyperVector&, const HyperVector&) = default;

 private:
  std::vector<double> components_;
};

// Derives independent, reproducible random streams from a master seed and a
// text label. The sub-seed is a stable 64-bit hash of (master_seed, label),
// so a label's vector never depends on which other labels were drawn.
class SeededGenerator {
 public:
  explicit SeededGenerator(std::uint64_t master_seed) : master_seed_(master_seed) {}

  std::uint64_t master_seed() const noexcept { return master_seed_; }
  std::uint64_t sub_seed(std::string_view label) const;
  std::mt19937_64 stream(std::string_view label) const;

 private:
  std::uint64_t master_seed_;
};

// Components i.i.d. Normal(0, 1/D). Requires dim >= 2.
HyperVector random_hv(const SeededGenerator& gen, std::string_view label,
                      std::size_t dim);

// Circular convolution, p_j = sum_k v_k u_{(j-k) mod D}.
HyperVector bind(const HyperVector& u, const HyperVector& v);

// Circular correlation, q_j = sum_k u_k p_{(j+k) mod D}; approximate inverse
// of bind(u, .).
HyperVector unbind(const HyperVector& p, const HyperVector& u);

// Component-wise sum. No normalization.
HyperVector bundle(std::span<const HyperVector> vs);

struct Similarity {
  double value = 0.0;
  bool degenerate = false;  // true when a zero vector was involved
};

Similarity cosine_similarity(const HyperVector& u, const HyperVector& v);

// Shorthand for cosine_similarity(u, v).value; cosine_sim(0, 0) == 0.
double cosine_sim(const HyperVector& u, const HyperVector& v);

inline constexpr double kNormalizeEpsilon = 1e-12;

// u / |u|, or u unchanged when |u| <= kNormalizeEpsilon.
HyperVector normalize(const HyperVector& u);

// Base vector for fractional power encoding. Its spectrum has unit magnitude
// and Hermitian symmetry, so every fractional power is a real vector.
class FpeBase {
 public:
  static FpeBase generate(const SeededGenerator& gen, std::string_view label,
                          std::size_t dim, double bandwidth);

  std::size_t dim() const noexcept { return dim_; }
  double bandwidth() const noexcept { return bandwidth_; }
  // Phase angle of each non-redundant Fourier coefficient (k = 0 .. D/2),
  // wrapped to (-pi, pi]. DC and Nyquist phases are zero.
  std::span<const double> phases() const noexcept { return phases_; }
  const HyperVector& base() const noexcept { return base_; }

 private:
  FpeBase(std::size_t dim, double bandwidth, std::vector<double> phases,
          HyperVector base);

  std::size_t dim_;
  double bandwidth_;
  std::vector<double> phases_;
  HyperVector base_;
};

inline constexpr double kFpeImaginaryTolerance = 1e-9;

// Inverse transform of the spectrum of base() raised to x / bandwidth.
// Throws kInvalidValue for non-finite x and kNumeric if the inverse has an
// imaginary residue above kFpeImaginaryTolerance.
HyperVector fpe_encode(const FpeBase& base, double x);

}  // namespace hdfp::hdc
