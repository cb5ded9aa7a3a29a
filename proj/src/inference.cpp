#include "specquant/inference.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "quadrature.hpp"
#include "specquant/error.hpp"
#include "specquant/parallel.hpp"
#include "specquant/sample.hpp"

namespace specquant {

namespace {

constexpr std::uint64_t kSigmaStream = 1;
constexpr std::uint64_t kAlternativeStream = 2;

void check_level(double p, const char* where) {
  if (!(p >= 0.0 && p <= 1.0)) {
    std::ostringstream msg;
    msg << where << ": level " << p << " outside [0, 1]";
    throw ArgumentError(msg.str());
  }
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ArgumentError("significance level alpha must lie in (0, 1)");
}

// Integral of g over [a, b], split at the window kinks and at 0.
template <class F>
double integrate_piecewise(F&& g, double a, double b) {
  double breaks[] = {a, -1.0, 0.0, 1.0, b};
  std::sort(std::begin(breaks), std::end(breaks));
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < std::size(breaks); ++i) {
    const double lo = std::max(a, breaks[i]);
    const double hi = std::min(b, breaks[i + 1]);
    if (hi > lo) total += detail::integrate(g, lo, hi);
  }
  return total;
}

TestResult run_test(std::span<const double> series, double p, double lambda_null,
                    const LagWindow& window, double alpha, const SigmaEstimate& sigma) {
  const auto estimate = estimate_smoothed(series, p, window);
  TestResult out;
  out.alpha = alpha;
  out.p_quantile = p;
  out.lambda_null = lambda_null;
  out.lambda_hat = estimate.lambda_hat;
  out.sigma_used = sigma;
  out.critical = normal_quantile(1.0 - 0.5 * alpha);
  out.statistic = std::sqrt(static_cast<double>(series.size())) *
                  std::abs(estimate.lambda_hat - lambda_null) / sigma.sigma;
  out.reject = out.statistic > out.critical;
  return out;
}

}  // namespace

std::string to_string(SigmaMethod method) {
  return method == SigmaMethod::monte_carlo ? "monte_carlo" : "plugin_gaussian";
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double normal_quantile(double u) {
  if (!(u > 0.0 && u < 1.0)) throw ArgumentError("normal_quantile: probability must lie in (0, 1)");

  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                 1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                 6.680131188771972e+01,  -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                 -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                 3.754408661907416e+00};
  constexpr double low = 0.02425;

  double x = 0.0;
  if (u < low) {
    const double q = std::sqrt(-2.0 * std::log(u));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (u <= 1.0 - low) {
    const double q = u - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-u));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }

  // One Halley step brings the 1e-9 relative error of the rational form to
  // machine precision.
  const double e = normal_cdf(x) - u;
  const double step = e * std::sqrt(kTwoPi) * std::exp(0.5 * x * x);
  return x - step / (1.0 + 0.5 * x * step);
}

SigmaEstimate mc_sigma(const SpectralModel& null_model, double p, std::size_t n, const LagWindow& window,
                       std::size_t replications, std::uint64_t base_seed) {
  check_level(p, "mc_sigma");
  if (replications < 2) throw ArgumentError("mc_sigma: need at least two replications");
  if (n < 2) throw ArgumentError("mc_sigma: n must be at least 2");
  if (window.bandwidth() >= n) throw ArgumentError("mc_sigma: bandwidth m must be smaller than n");

  std::vector<double> estimates(replications);
  parallel_for(replications, [&](std::size_t k) {
    const auto series = generate(null_model, n, replicate_seed(base_seed, k));
    estimates[k] = estimate_smoothed(series.values, p, window).lambda_hat;
  });

  SigmaEstimate out;
  out.method = SigmaMethod::monte_carlo;
  out.replications = replications;
  out.model = null_model;
  out.n = n;
  out.sigma = std::sqrt(static_cast<double>(n)) * sample_sd(estimates);
  if (!(out.sigma > 1e-12)) {
    out.sigma = 1e-12;
    out.degenerate = true;
  }
  return out;
}

double plugin_variance_bracket(const SpectralModel& null_model, double p,
                               const std::optional<LagWindow>& window) {
  check_level(p, "plugin_variance_bracket");
  const double lambda_p = true_quantile(spectral_measure(null_model), p);
  auto integrand = [&](double w) {
    const double phi = window ? window->shape(w) : 1.0;
    const double f = spectral_density(null_model, w);
    return phi * phi * f * f;
  };
  const double full = integrate_piecewise(integrand, -kPi, kPi);
  const double lower = integrate_piecewise(integrand, -kPi, lambda_p);
  return kPi * p * p * full + kTwoPi * (1.0 - 4.0 * p) * lower;
}

SigmaEstimate plugin_sigma_gaussian(const SpectralModel& null_model, double p,
                                    const std::optional<LagWindow>& window) {
  const double bracket = plugin_variance_bracket(null_model, p, window);
  const double lambda_p = true_quantile(spectral_measure(null_model), p);
  const double f = spectral_density(null_model, lambda_p);
  const double value = bracket / (f * f);
  if (!(value > 0.0)) {
    std::ostringstream msg;
    msg << "plug-in Gaussian variance is not positive (bracket " << bracket << ", sigma^2 " << value
        << ") for " << null_model.tag() << " at p=" << p;
    throw FormulaInconsistencyError(msg.str(), bracket, value);
  }
  SigmaEstimate out;
  out.sigma = std::sqrt(value);
  out.method = SigmaMethod::plugin_gaussian;
  out.model = null_model;
  return out;
}

TestResult quantile_test(std::span<const double> series, double p, const SpectralModel& null_model,
                         const LagWindow& window, double alpha, const SigmaEstimate& sigma) {
  check_level(p, "quantile_test");
  check_alpha(alpha);
  if (!(sigma.sigma > 0.0)) throw ArgumentError("quantile_test: sigma must be positive");
  const double lambda_null = true_quantile(spectral_measure(null_model), p);
  return run_test(series, p, lambda_null, window, alpha, sigma);
}

double power_study(const SpectralModel& null_model, const SpectralModel& alt_model, double p, std::size_t n,
                   double alpha, std::size_t replications, std::uint64_t base_seed,
                   const PowerStudyOptions& options) {
  check_level(p, "power_study");
  check_alpha(alpha);
  if (replications < 1) throw ArgumentError("power_study: need at least one replication");
  const std::size_t m = options.m == 0 ? default_bandwidth(n) : options.m;
  const auto window = make_window(options.window, m);

  const auto sigma = mc_sigma(null_model, p, n, window, options.sigma_replications,
                              stream_seed(base_seed, kSigmaStream));
  const double lambda_null = true_quantile(spectral_measure(null_model), p);
  const std::uint64_t alt_seed = stream_seed(base_seed, kAlternativeStream);

  std::vector<char> rejected(replications, 0);
  parallel_for(replications, [&](std::size_t k) {
    const auto series = generate(alt_model, n, replicate_seed(alt_seed, k));
    rejected[k] = run_test(series.values, p, lambda_null, window, alpha, sigma).reject ? 1 : 0;
  });
  const auto count = std::count(rejected.begin(), rejected.end(), 1);
  return static_cast<double>(count) / static_cast<double>(replications);
}

RawLimitLaw raw_limit_law(const SpectralModel& model, double p) {
  const double lambda_p = true_quantile(spectral_measure(model), p);
  const double variance = plugin_variance_bracket(model, p, std::nullopt);
  if (!(variance > 0.0)) {
    std::ostringstream msg;
    msg << "raw limit variance is not positive (" << variance << ") for " << model.tag() << " at p=" << p;
    throw FormulaInconsistencyError(msg.str(), variance, variance);
  }
  return {spectral_density(model, lambda_p), std::sqrt(variance)};
}

std::vector<RawLimitRow> raw_limit_diagnostic(const SpectralModel& model, double p,
                                              std::span<const std::size_t> n_list,
                                              std::size_t replications, std::uint64_t base_seed) {
  check_level(p, "raw_limit_diagnostic");
  if (replications < 2) throw ArgumentError("raw_limit_diagnostic: need at least two replications");
  const double lambda_p = true_quantile(spectral_measure(model), p);
  const double critical = jarque_bera_critical(0.01);

  std::vector<RawLimitRow> rows;
  for (std::size_t n : n_list) {
    const auto window = bartlett_window(default_bandwidth(n));
    const auto grid = symmetric_grid(n);
    const double root_n = std::sqrt(static_cast<double>(n));
    const std::uint64_t seed = stream_seed(base_seed, n);

    std::vector<double> raw(replications);
    std::vector<double> smoothed(replications);
    parallel_for(replications, [&](std::size_t k) {
      const auto series = generate(model, n, replicate_seed(seed, k));
      raw[k] = root_n * (estimate_raw(series.values, p, grid).lambda_hat - lambda_p);
      smoothed[k] = root_n * (estimate_smoothed(series.values, p, window, grid).lambda_hat - lambda_p);
    });

    for (auto kind : {EstimateKind::raw, EstimateKind::smoothed}) {
      RawLimitRow row;
      row.n = n;
      row.kind = kind;
      row.m = kind == EstimateKind::smoothed ? window.bandwidth() : 0;
      row.summary = summarize(kind == EstimateKind::raw ? raw : smoothed);
      row.normality_rejected_1pct = row.summary.jarque_bera > critical;
      rows.push_back(row);
    }
  }
  return rows;
}

double tn_statistic(std::span<const double> series, double lambda, double beta) {
  const std::size_t n = series.size();
  if (n < 2) throw ArgumentError("tn_statistic: series needs at least two values");
  if (!(beta > 0.0)) throw ArgumentError("tn_statistic: beta must be positive");
  const double width = std::pow(static_cast<double>(n), -beta);
  if (!(lambda > -kPi && lambda + width <= kPi)) {
    throw DomainError("tn_statistic: integration interval leaves [-pi, pi]");
  }

  // int_a^{a+w} I = (1/2pi) [C_0 w + 2 sum_h C_h (sin(h(a+w)) - sin(ha)) / h],
  // with the sine difference written as 2 cos(h(a+w/2)) sin(hw/2).
  const auto acov = autocovariance(series, n - 1);
  CompensatedSum sum;
  sum.add(acov[0] * width);
  for (std::size_t h = 1; h < n; ++h) {
    const double hd = static_cast<double>(h);
    const double diff = 2.0 * std::cos(hd * (lambda + 0.5 * width)) * std::sin(0.5 * hd * width);
    sum.add(2.0 * acov[h] * diff / hd);
  }
  return sum.value() / kTwoPi / width;
}

std::vector<TnVarianceRow> tn_variance_diagnostic(const SpectralModel& model, double lambda, double beta,
                                                  std::span<const std::size_t> n_list,
                                                  std::size_t replications, std::uint64_t base_seed) {
  if (replications < 2) throw ArgumentError("tn_variance_diagnostic: need at least two replications");
  std::vector<TnVarianceRow> rows;
  for (std::size_t n : n_list) {
    const std::uint64_t seed = stream_seed(base_seed, n);
    std::vector<double> values(replications);
    parallel_for(replications, [&](std::size_t k) {
      values[k] = tn_statistic(generate(model, n, replicate_seed(seed, k)).values, lambda, beta);
    });
    rows.push_back({n, beta, sample_variance(values), replications});
  }
  return rows;
}

}  // namespace specquant
