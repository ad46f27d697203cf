#include "hdfp/fourier.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>

#include "hdfp/error.hpp"

namespace hdfp::hdc {
namespace {

static_assert(sizeof(std::complex<double>) == sizeof(fftw_complex));

// FFTW's planner is not thread-safe; execution of an existing plan through the
// new-array interface is. Plans are created once per length and never freed.
// FFTW_UNALIGNED lets any std::vector buffer be used with the same plan, and
// FFTW_ESTIMATE keeps plan selection deterministic.
struct Plans {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
  fftw_plan c2c_backward = nullptr;
};

const Plans& plans_for(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, std::unique_ptr<Plans>> cache;

  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) {
    const int len = static_cast<int>(n);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    std::vector<double> real(n);
    std::vector<std::complex<double>> half(spectrum_size(n));
    std::vector<std::complex<double>> full_in(n), full_out(n);
    auto* half_ptr = reinterpret_cast<fftw_complex*>(half.data());
    auto plans = std::make_unique<Plans>();
    plans->r2c = fftw_plan_dft_r2c_1d(len, real.data(), half_ptr, flags);
    plans->c2r = fftw_plan_dft_c2r_1d(len, half_ptr, real.data(), flags);
    plans->c2c_backward = fftw_plan_dft_1d(
        len, reinterpret_cast<fftw_complex*>(full_in.data()),
        reinterpret_cast<fftw_complex*>(full_out.data()), FFTW_BACKWARD, flags);
    if (!plans->r2c || !plans->c2r || !plans->c2c_backward) {
      throw Error(ErrorKind::kNumeric, "FFTW failed to create a plan for length " +
                                           std::to_string(n));
    }
    slot = std::move(plans);
  }
  return *slot;
}

void require_length(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::kInvalidDimension, "transform length must be positive");
}

}  // namespace

Spectrum forward_transform(std::span<const double> signal) {
  const std::size_t n = signal.size();
  require_length(n);
  const Plans& plans = plans_for(n);
  std::vector<double> input(signal.begin(), signal.end());
  Spectrum out(spectrum_size(n));
  fftw_execute_dft_r2c(plans.r2c, input.data(),
                       reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

std::vector<double> inverse_transform(std::span<const std::complex<double>> half,
                                      std::size_t dim) {
  require_length(dim);
  if (half.size() != spectrum_size(dim)) {
    throw Error(ErrorKind::kShape, "half spectrum length does not match dimension");
  }
  const Plans& plans = plans_for(dim);
  // c2r overwrites its input.
  std::vector<std::complex<double>> scratch(half.begin(), half.end());
  std::vector<double> out(dim);
  fftw_execute_dft_c2r(plans.c2r, reinterpret_cast<fftw_complex*>(scratch.data()),
                       out.data());
  const double scale = 1.0 / static_cast<double>(dim);
  for (double& x : out) x *= scale;
  return out;
}

std::vector<std::complex<double>> inverse_transform_complex(
    std::span<const std::complex<double>> full) {
  const std::size_t n = full.size();
  require_length(n);
  const Plans& plans = plans_for(n);
  std::vector<std::complex<double>> input(full.begin(), full.end());
  std::vector<std::complex<double>> out(n);
  fftw_execute_dft(plans.c2c_backward, reinterpret_cast<fftw_complex*>(input.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  const double scale = 1.0 / static_cast<double>(n);
  for (auto& x : out) x *= scale;
  return out;
}

}  // namespace hdfp::hdc
