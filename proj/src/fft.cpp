#include "fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

namespace specquant::detail {

namespace {

// FFTW planning is not thread-safe; execution with the new-array interface is.
// Plans are created once per (size, direction) under a lock and shared.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct PlanDeleter {
  void operator()(fftw_plan_s* plan) const { fftw_destroy_plan(plan); }
};
using PlanHandle = std::unique_ptr<fftw_plan_s, PlanDeleter>;

struct Buffer {
  explicit Buffer(std::size_t bytes) : data(fftw_malloc(bytes)) {}
  ~Buffer() { fftw_free(data); }
  Buffer(const Buffer&) = delete;
  Buffer& operator=(const Buffer&) = delete;
  void* data;
};

fftw_plan plan_for(std::size_t length, bool forward) {
  static std::map<std::pair<std::size_t, bool>, PlanHandle> cache;
  std::lock_guard lock(planner_mutex());
  auto& slot = cache[{length, forward}];
  if (!slot) {
    Buffer real(sizeof(double) * length);
    Buffer complex(sizeof(fftw_complex) * (length / 2 + 1));
    const int n = static_cast<int>(length);
    fftw_plan plan = forward
                         ? fftw_plan_dft_r2c_1d(n, static_cast<double*>(real.data),
                                                static_cast<fftw_complex*>(complex.data), FFTW_ESTIMATE)
                         : fftw_plan_dft_c2r_1d(n, static_cast<fftw_complex*>(complex.data),
                                                static_cast<double*>(real.data), FFTW_ESTIMATE);
    slot.reset(plan);
  }
  return slot.get();
}

}  // namespace

std::vector<std::complex<double>> real_dft(std::span<const double> input) {
  const std::size_t length = input.size();
  const std::size_t bins = length / 2 + 1;
  fftw_plan plan = plan_for(length, true);

  Buffer in(sizeof(double) * length);
  Buffer out(sizeof(fftw_complex) * bins);
  std::memcpy(in.data, input.data(), sizeof(double) * length);
  fftw_execute_dft_r2c(plan, static_cast<double*>(in.data), static_cast<fftw_complex*>(out.data));

  std::vector<std::complex<double>> result(bins);
  const auto* raw = static_cast<const fftw_complex*>(out.data);
  for (std::size_t k = 0; k < bins; ++k) result[k] = {raw[k][0], raw[k][1]};
  return result;
}

std::vector<double> inverse_real_dft(std::span<const std::complex<double>> half_spectrum,
                                     std::size_t length) {
  const std::size_t bins = length / 2 + 1;
  fftw_plan plan = plan_for(length, false);

  Buffer in(sizeof(fftw_complex) * bins);
  Buffer out(sizeof(double) * length);
  auto* raw = static_cast<fftw_complex*>(in.data);
  for (std::size_t k = 0; k < bins; ++k) {
    raw[k][0] = half_spectrum[k].real();
    raw[k][1] = half_spectrum[k].imag();
  }
  // c2r destroys its input, which is our private copy.
  fftw_execute_dft_c2r(plan, raw, static_cast<double*>(out.data));

  const auto* values = static_cast<const double*>(out.data);
  return std::vector<double>(values, values + length);
}

}  // namespace specquant::detail
