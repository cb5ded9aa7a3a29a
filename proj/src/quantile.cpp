#include "specquant/quantile.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "specquant/error.hpp"
#include "specquant/models.hpp"

namespace specquant {

namespace {

void check_level(double p, const char* where) {
  if (!(p >= 0.0 && p <= 1.0)) {
    std::ostringstream msg;
    msg << where << ": level " << p << " outside [0, 1]";
    throw ArgumentError(msg.str());
  }
}

double largest_step(std::span<const double> grid) {
  double step = 0.0;
  for (std::size_t i = 1; i < grid.size(); ++i) step = std::max(step, grid[i] - grid[i - 1]);
  return step;
}

EstimateKind estimate_kind(PeriodogramKind kind) {
  return kind == PeriodogramKind::smoothed ? EstimateKind::smoothed : EstimateKind::raw;
}

// Weighted cumulative mass G_j = sum_{i<=j} w_i I_i. It is the right derivative
// of S_n plus p times the total, so the first j with G_j >= p G_last is the
// smallest grid minimizer.
std::vector<double> cumulative_mass(const Periodogram& pgram) {
  const auto weights = trapezoid_weights(pgram.grid);
  std::vector<double> cumulative(pgram.ordinates.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < cumulative.size(); ++i) {
    acc += weights[i] * pgram.ordinates[i];
    cumulative[i] = acc;
  }
  return cumulative;
}

QuantileEstimate invert(const Periodogram& pgram, std::span<const double> cumulative, double p) {
  check_level(p, "estimate");
  const double total = cumulative.back();
  const double target = p * total;
  const auto it = std::lower_bound(cumulative.begin(), cumulative.end(), target);
  // cumulative.back() == total >= target, so `it` is always valid.
  const auto index = static_cast<std::size_t>(it - cumulative.begin());

  QuantileEstimate out;
  out.p = p;
  out.lambda_hat = pgram.grid[index];
  out.kind = estimate_kind(pgram.kind);
  out.grid_step = largest_step(pgram.grid);
  out.total_mass_hat = total;
  out.grid_index = index;
  out.n = pgram.n;
  out.window = pgram.window;
  return out;
}

void check_periodogram(const Periodogram& pgram) {
  if (pgram.grid.size() < 2 || pgram.grid.size() != pgram.ordinates.size()) {
    throw ArgumentError("periodogram needs at least two aligned grid points");
  }
}

}  // namespace

std::string to_string(EstimateKind kind) {
  return kind == EstimateKind::smoothed ? "smoothed" : "raw";
}

double check_function(double tau, double u) {
  check_level(tau, "check_function");
  return u < 0.0 ? (tau - 1.0) * u : tau * u;
}

std::vector<double> trapezoid_weights(std::span<const double> grid) {
  if (grid.size() < 2) throw ArgumentError("trapezoid_weights: need at least two grid points");
  std::vector<double> weights(grid.size());
  const std::size_t last = grid.size() - 1;
  weights[0] = 0.5 * (grid[1] - grid[0]);
  weights[last] = 0.5 * (grid[last] - grid[last - 1]);
  for (std::size_t i = 1; i < last; ++i) weights[i] = 0.5 * (grid[i + 1] - grid[i - 1]);
  return weights;
}

double empirical_objective(const Periodogram& pgram, double p, double theta) {
  check_periodogram(pgram);
  check_level(p, "empirical_objective");
  if (!(theta >= -kPi && theta <= kPi)) throw DomainError("empirical_objective: theta outside [-pi, pi]");
  const auto weights = trapezoid_weights(pgram.grid);
  double value = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    value += weights[i] * check_function(p, pgram.grid[i] - theta) * pgram.ordinates[i];
  }
  return value;
}

QuantileEstimate estimate_from_periodogram(const Periodogram& pgram, double p) {
  const double levels[] = {p};
  return estimate_from_periodogram(pgram, levels).front();
}

std::vector<QuantileEstimate> estimate_from_periodogram(const Periodogram& pgram,
                                                        std::span<const double> levels) {
  check_periodogram(pgram);
  for (double p : levels) check_level(p, "estimate");
  const auto cumulative = cumulative_mass(pgram);
  if (!(cumulative.back() > 0.0)) {
    throw DegenerateInputError("spectral estimate has no mass; the quantile is undefined");
  }
  std::vector<QuantileEstimate> out;
  out.reserve(levels.size());
  for (double p : levels) out.push_back(invert(pgram, cumulative, p));
  return out;
}

QuantileEstimate estimate_raw(std::span<const double> series, double p, std::span<const double> grid) {
  check_level(p, "estimate_raw");
  return estimate_from_periodogram(raw_periodogram(series, grid), p);
}

QuantileEstimate estimate_raw(std::span<const double> series, double p) {
  return estimate_raw(series, p, symmetric_grid(series.size()));
}

QuantileEstimate estimate_smoothed(std::span<const double> series, double p, const LagWindow& window,
                                   std::span<const double> grid) {
  check_level(p, "estimate_smoothed");
  return estimate_from_periodogram(smoothed_density(series, window, grid), p);
}

QuantileEstimate estimate_smoothed(std::span<const double> series, double p, const LagWindow& window) {
  return estimate_smoothed(series, p, window, symmetric_grid(series.size()));
}

double argmin_crosscheck(const Periodogram& pgram, double p) {
  check_periodogram(pgram);
  double best_value = std::numeric_limits<double>::infinity();
  double best_theta = pgram.grid.front();
  for (double theta : pgram.grid) {
    const double value = empirical_objective(pgram, p, theta);
    if (value < best_value) {
      best_value = value;
      best_theta = theta;
    }
  }
  return best_theta;
}

void write_estimate_csv_header(std::ostream& out) { out << "p,lambda_hat,kind,n,m,seed\n"; }

void write_estimate_csv_row(std::ostream& out, const QuantileEstimate& estimate, std::uint64_t seed) {
  const auto precision = out.precision();
  out << std::setprecision(std::numeric_limits<double>::max_digits10) << estimate.p << ','
      << estimate.lambda_hat << ',' << to_string(estimate.kind) << ',' << estimate.n << ',';
  if (estimate.window) out << estimate.window->m;
  out << ',' << seed << '\n';
  out.precision(precision);
}

}  // namespace specquant
