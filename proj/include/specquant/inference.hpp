#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "specquant/models.hpp"
#include "specquant/quantile.hpp"
#include "specquant/spectral.hpp"
#include "specquant/stats.hpp"

namespace specquant {

enum class SigmaMethod { monte_carlo, plugin_gaussian };

std::string to_string(SigmaMethod method);

struct SigmaEstimate {
  double sigma = 0.0;
  SigmaMethod method = SigmaMethod::monte_carlo;
  std::size_t replications = 0;
  SpectralModel model;
  /// Sample size the sigma was calibrated at (monte_carlo only).
  std::size_t n = 0;
  /// All replicate estimates coincided; sigma was floored at 1e-12.
  bool degenerate = false;
};

struct TestResult {
  double statistic = 0.0;
  double critical = 0.0;
  double alpha = 0.0;
  bool reject = false;
  double p_quantile = 0.0;
  double lambda_null = 0.0;
  double lambda_hat = 0.0;
  SigmaEstimate sigma_used;
};

/// Limit law parameters of the raw estimator for Gaussian processes.
struct RawLimitLaw {
  double exp_mean = 0.0;
  double normal_sd = 0.0;
};

/// Inverse standard normal CDF (Acklam's rational approximation followed by a
/// Halley correction step).
double normal_quantile(double u);
double normal_cdf(double x);

/// sigma = sqrt(n) * unbiased sd of the smoothed estimates over `replications`
/// series simulated from the null model.
SigmaEstimate mc_sigma(const SpectralModel& null_model, double p, std::size_t n,
                       const LagWindow& window, std::size_t replications,
                       std::uint64_t base_seed);

/// Gaussian-case closed-form variance
///   f(l_p)^-2 [ pi p^2 int phi^2 f_Y f_X + 2 pi (1 - 4p) int_{-pi}^{l_p} phi^2 f_Y f_X ]
/// evaluated by quadrature, with phi evaluated at the frequency itself
/// (phi = 1 when no window is given). Diagnostic only. Throws
/// FormulaInconsistencyError when the value is not positive.
SigmaEstimate plugin_sigma_gaussian(const SpectralModel& null_model, double p,
                                    const std::optional<LagWindow>& window = std::nullopt);

/// Bracketed part of plugin_sigma_gaussian without sign checks.
double plugin_variance_bracket(const SpectralModel& null_model, double p,
                               const std::optional<LagWindow>& window = std::nullopt);

/// statistic = sqrt(n) |lambda*_p - lambda_p| / sigma; reject iff statistic >
/// Phi^-1(1 - alpha/2). lambda_p comes from the null model's true quantile.
TestResult quantile_test(std::span<const double> series, double p,
                         const SpectralModel& null_model, const LagWindow& window,
                         double alpha, const SigmaEstimate& sigma);

struct PowerStudyOptions {
  /// Lag window name accepted by make_window.
  std::string window = "bartlett";
  /// Bandwidth; 0 selects default_bandwidth(n).
  std::size_t m = 0;
  std::size_t sigma_replications = 100;
};

/// Rejection fraction of quantile_test over `replications` series drawn from
/// the alternative, with sigma from mc_sigma on the null.
double power_study(const SpectralModel& null_model, const SpectralModel& alt_model, double p,
                   std::size_t n, double alpha, std::size_t replications,
                   std::uint64_t base_seed, const PowerStudyOptions& options = {});

/// Raw limit parameters: exponential mean f_X(lambda_p) and the
/// normal sd from the Gaussian-case variance. Throws FormulaInconsistencyError
/// when that variance is not positive.
RawLimitLaw raw_limit_law(const SpectralModel& model, double p);

struct RawLimitRow {
  std::size_t n = 0;
  EstimateKind kind = EstimateKind::raw;
  std::size_t m = 0;
  MomentSummary summary;
  bool normality_rejected_1pct = false;
};

/// Monte Carlo distribution of sqrt(n)(lambda_hat - lambda_p) for the raw and
/// the Bartlett-smoothed estimator at each n. Both estimators see the same
/// series.
std::vector<RawLimitRow> raw_limit_diagnostic(const SpectralModel& model, double p,
                                              std::span<const std::size_t> n_list,
                                              std::size_t replications,
                                              std::uint64_t base_seed);

/// T_n(lambda) = n^beta * integral_{lambda}^{lambda + n^-beta} I_n(omega) d omega,
/// integrated exactly through the lag-sum form of the periodogram.
double tn_statistic(std::span<const double> series, double lambda, double beta);

struct TnVarianceRow {
  std::size_t n = 0;
  double beta = 0.0;
  double variance = 0.0;
  std::size_t replications = 0;
};

std::vector<TnVarianceRow> tn_variance_diagnostic(const SpectralModel& model, double lambda,
                                                  double beta,
                                                  std::span<const std::size_t> n_list,
                                                  std::size_t replications,
                                                  std::uint64_t base_seed);

}  // namespace specquant
