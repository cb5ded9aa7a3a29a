#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "specquant/spectral.hpp"

namespace specquant {

enum class EstimateKind { raw, smoothed };

std::string to_string(EstimateKind kind);

struct QuantileEstimate {
  double p = 0.0;
  double lambda_hat = 0.0;
  EstimateKind kind = EstimateKind::raw;
  /// Largest spacing of the evaluation grid; the estimate is quantized to it.
  double grid_step = 0.0;
  /// Total trapezoid mass of the ordinates.
  double total_mass_hat = 0.0;
  std::size_t grid_index = 0;
  std::size_t n = 0;
  std::optional<WindowMeta> window;
};

/// rho_tau(u) = u (tau - 1{u < 0}).
double check_function(double tau, double u);

/// Trapezoid weights of a strictly increasing grid.
std::vector<double> trapezoid_weights(std::span<const double> grid);

/// S_n(theta): trapezoid quadrature of rho_p(omega - theta) times the ordinates.
double empirical_objective(const Periodogram& pgram, double p, double theta);

/// Smallest grid point minimizing S_n, found from the first-order condition:
/// the first index j whose weighted cumulative mass sum_{i<=j} w_i I_i reaches
/// p times the total. Throws DegenerateInputError on zero total mass.
QuantileEstimate estimate_from_periodogram(const Periodogram& pgram, double p);

/// Several levels on one periodogram.
std::vector<QuantileEstimate> estimate_from_periodogram(const Periodogram& pgram,
                                                        std::span<const double> levels);

QuantileEstimate estimate_raw(std::span<const double> series, double p,
                              std::span<const double> grid);
/// Uses symmetric_grid(n).
QuantileEstimate estimate_raw(std::span<const double> series, double p);

QuantileEstimate estimate_smoothed(std::span<const double> series, double p,
                                   const LagWindow& window, std::span<const double> grid);
/// Uses symmetric_grid(n).
QuantileEstimate estimate_smoothed(std::span<const double> series, double p,
                                   const LagWindow& window);

/// Brute-force oracle: evaluates S_n at every grid point and returns the
/// smallest minimizer.
double argmin_crosscheck(const Periodogram& pgram, double p);

/// CSV header and row: p,lambda_hat,kind,n,m,seed
void write_estimate_csv_header(std::ostream& out);
void write_estimate_csv_row(std::ostream& out, const QuantileEstimate& estimate,
                            std::uint64_t seed);

}  // namespace specquant
