#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace hdfp::hdc {

using Spectrum = std::vector<std::complex<double>>;

constexpr std::size_t spectrum_size(std::size_t dim) { return dim / 2 + 1; }

// Real-to-half-complex forward DFT of arbitrary length (unnormalized).
Spectrum forward_transform(std::span<const double> signal);

// Inverse of forward_transform, scaled by 1/dim.
std::vector<double> inverse_transform(std::span<const std::complex<double>> half,
                                      std::size_t dim);

// Full complex inverse DFT, scaled by 1/n.
std::vector<std::complex<double>> inverse_transform_complex(
    std::span<const std::complex<double>> full);

}  // namespace hdfp::hdc
