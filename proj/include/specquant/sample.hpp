#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "specquant/models.hpp"

namespace specquant {

struct TimeSeries {
  std::vector<double> values;
  std::uint64_t seed = 0;
  std::string model_tag;

  std::size_t size() const noexcept { return values.size(); }
};

/// Throws ArgumentError unless the series has at least two finite values.
void validate(const TimeSeries& series);

/// A simulated series together with the phases drawn for each sinusoid atom.
struct Realization {
  TimeSeries series;
  std::vector<double> phases;
};

struct SimulationPlan {
  SpectralModel model;
  std::size_t n = 0;
  std::size_t replications = 1;
  std::uint64_t base_seed = 0;
};

/// SplitMix64 finalizer; a bijection on 64-bit words.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Seed of replicate k: mix64(base_seed + 0x9E3779B97F4A7C15 * (k + 1)).
/// Injective in k for a fixed base seed.
std::uint64_t replicate_seed(std::uint64_t base_seed, std::uint64_t k) noexcept;

/// Independent sub-stream of a base seed, used to keep e.g. the null-variance
/// simulations of a power study apart from its alternative draws.
std::uint64_t stream_seed(std::uint64_t base_seed, std::uint64_t stream) noexcept;

/// Y_t = sum_j R_j cos(lambda_j t + phi_j) + X_t for t = 1..n, deterministic in
/// (model, n, seed). Phases are drawn first, then the Gaussian noise.
Realization simulate(const SpectralModel& model, std::size_t n, std::uint64_t seed);
TimeSeries generate(const SpectralModel& model, std::size_t n, std::uint64_t seed);

/// Replicate k is generate(model, n, replicate_seed(base_seed, k)); produced
/// in parallel with identical results to a serial run.
std::vector<TimeSeries> generate_batch(const SimulationPlan& plan);

/// Single-column CSV with header `value`. Comment lines start with '#'.
void write_series_csv(std::ostream& out, const TimeSeries& series);
/// Throws ArgumentError naming the 1-based line of the first malformed row.
TimeSeries read_series_csv(std::istream& in);

}  // namespace specquant
