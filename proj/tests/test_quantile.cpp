#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "specquant/error.hpp"
#include "specquant/models.hpp"
#include "specquant/quantile.hpp"
#include "specquant/sample.hpp"
#include "specquant/spectral.hpp"
#include "specquant/stats.hpp"

using namespace specquant;

namespace {

std::vector<double> random_series(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> x(n);
  for (auto& v : x) v = normal(rng);
  return x;
}

// Objective scan written independently of the library: explicit trapezoid
// panels, smallest strict minimizer.
double scan_argmin(const Periodogram& pgram, double p) {
  const auto& g = pgram.grid;
  const auto& y = pgram.ordinates;
  double best = std::numeric_limits<double>::infinity();
  double best_theta = g.front();
  for (double theta : g) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < g.size(); ++i) {
      auto term = [&](std::size_t k) {
        const double u = g[k] - theta;
        return (u < 0.0 ? (p - 1.0) * u : p * u) * y[k];
      };
      s += 0.5 * (g[i + 1] - g[i]) * (term(i) + term(i + 1));
    }
    if (s < best) {
      best = s;
      best_theta = theta;
    }
  }
  return best_theta;
}

Periodogram uniform_pgram(std::size_t half, double value) {
  Periodogram pgram;
  pgram.grid = symmetric_grid(half);
  pgram.ordinates.assign(pgram.grid.size(), value);
  pgram.n = half;
  return pgram;
}

double mean_estimate(const SpectralModel& model, std::size_t n, double p, std::size_t reps,
                     std::uint64_t base, bool smoothed, std::vector<double>* all = nullptr) {
  std::vector<double> values;
  for (std::size_t k = 0; k < reps; ++k) {
    const auto x = generate(model, n, replicate_seed(base, k)).values;
    values.push_back(smoothed ? estimate_smoothed(x, p, bartlett_window(default_bandwidth(n))).lambda_hat
                              : estimate_raw(x, p).lambda_hat);
  }
  if (all) *all = values;
  return mean(values);
}

}  // namespace

TEST(CheckFunction, Values) {
  EXPECT_DOUBLE_EQ(check_function(0.7, 1.0), 0.7);
  EXPECT_DOUBLE_EQ(check_function(0.7, -1.0), 0.3);
  for (double tau : {0.0, 0.3, 1.0}) EXPECT_EQ(check_function(tau, 0.0), 0.0);
  EXPECT_THROW(check_function(1.5, 0.0), ArgumentError);
  EXPECT_THROW(check_function(-0.1, 0.0), ArgumentError);
}

TEST(EmpiricalObjective, ZeroUniformAndLinear) {
  const auto zero = uniform_pgram(16, 0.0);
  for (double theta : {-kPi, -1.0, 0.0, 2.5}) EXPECT_EQ(empirical_objective(zero, 0.3, theta), 0.0);

  const double c = 2.5;
  const auto flat = uniform_pgram(4096, c);
  EXPECT_NEAR(empirical_objective(flat, 0.5, 0.0), c * kPi * kPi / 2.0, 1e-4);

  std::mt19937_64 rng(11);
  const auto x = random_series(rng, 40);
  const auto pgram = raw_periodogram(x, symmetric_grid(40));
  auto tripled = pgram;
  for (auto& v : tripled.ordinates) v *= 3.0;
  for (double theta : {-2.0, 0.0, 0.7, kPi}) {
    EXPECT_NEAR(empirical_objective(tripled, 0.7, theta), 3.0 * empirical_objective(pgram, 0.7, theta),
                1e-12 * empirical_objective(tripled, 0.7, theta));
  }
  EXPECT_THROW(empirical_objective(pgram, 0.7, 4.0), DomainError);
}

TEST(Estimate, StructuralLevels) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + rng() % 300;
    const auto x = random_series(rng, n);
    EXPECT_EQ(estimate_raw(x, 0.5).lambda_hat, 0.0);
    EXPECT_EQ(estimate_raw(x, 1.0).lambda_hat, kPi);
    if (n >= 3) {
      const auto w = bartlett_window(default_bandwidth(n));
      EXPECT_EQ(estimate_smoothed(x, 0.5, w).lambda_hat, 0.0);
      EXPECT_EQ(estimate_smoothed(x, 1.0, w).lambda_hat, kPi);
    }
  }
}

TEST(Estimate, Metadata) {
  std::mt19937_64 rng(13);
  const auto x = random_series(rng, 50);
  const auto raw = estimate_raw(x, 0.7);
  EXPECT_EQ(raw.kind, EstimateKind::raw);
  EXPECT_EQ(raw.n, 50u);
  EXPECT_NEAR(raw.grid_step, kPi / 50, 1e-15);
  EXPECT_FALSE(raw.window.has_value());
  EXPECT_EQ(symmetric_grid(50)[raw.grid_index], raw.lambda_hat);

  const auto smooth = estimate_smoothed(x, 0.7, bartlett_window(4));
  EXPECT_EQ(smooth.kind, EstimateKind::smoothed);
  ASSERT_TRUE(smooth.window.has_value());
  EXPECT_EQ(smooth.window->m, 4u);
  EXPECT_THROW(estimate_raw(x, 1.2), ArgumentError);
}

TEST(Estimate, MatchesObjectiveScanExactly) {
  std::mt19937_64 rng(14);
  const auto grid = symmetric_grid(512);  // step pi/512
  std::uniform_real_distribution<double> level(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 3 + rng() % 62;
    const auto x = random_series(rng, n);
    const double p = level(rng);
    const auto raw = raw_periodogram(x, grid);
    const auto smooth = smoothed_density(x, bartlett_window(default_bandwidth(n)), grid);
    const double raw_hat = estimate_from_periodogram(raw, p).lambda_hat;
    const double smooth_hat = estimate_from_periodogram(smooth, p).lambda_hat;
    EXPECT_EQ(raw_hat, scan_argmin(raw, p)) << "trial " << trial;
    EXPECT_EQ(raw_hat, argmin_crosscheck(raw, p)) << "trial " << trial;
    EXPECT_EQ(smooth_hat, scan_argmin(smooth, p)) << "trial " << trial;
    EXPECT_EQ(smooth_hat, argmin_crosscheck(smooth, p)) << "trial " << trial;
  }
}

TEST(Estimate, UniformOrdinates) {
  const auto flat = uniform_pgram(512, 1.0);
  EXPECT_NEAR(estimate_from_periodogram(flat, 0.75).lambda_hat, kPi / 2, kPi / 512 + 1e-12);
  EXPECT_NEAR(argmin_crosscheck(flat, 0.75), kPi / 2, kPi / 512 + 1e-12);
}

TEST(Estimate, ScaleInvariantExactly) {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 30; ++trial) {
    const auto x = random_series(rng, 64);
    const auto pgram = raw_periodogram(x, symmetric_grid(64));
    for (double c : {1e-6, 0.37, 3.0, 1e6}) {
      auto scaled = pgram;
      for (auto& v : scaled.ordinates) v *= c;
      for (double p : {0.1, 0.55, 0.7, 0.93}) {
        EXPECT_EQ(estimate_from_periodogram(scaled, p).grid_index,
                  estimate_from_periodogram(pgram, p).grid_index);
      }
    }
  }
}

TEST(Estimate, MonotoneInLevel) {
  std::mt19937_64 rng(16);
  const auto x = random_series(rng, 80);
  const auto pgram = smoothed_density(x, bartlett_window(5), symmetric_grid(80));
  std::vector<double> levels;
  for (int i = 0; i <= 100; ++i) levels.push_back(i / 100.0);
  const auto estimates = estimate_from_periodogram(pgram, levels);
  for (std::size_t i = 1; i < estimates.size(); ++i) {
    EXPECT_LE(estimates[i - 1].lambda_hat, estimates[i].lambda_hat);
  }
}

TEST(Estimate, DegenerateInputThrows) {
  const std::vector<double> zero(30, 0.0);
  EXPECT_THROW(estimate_raw(zero, 0.7), DegenerateInputError);
  EXPECT_THROW(estimate_smoothed(zero, 0.7, bartlett_window(3)), DegenerateInputError);
}

TEST(EstimateMonteCarlo, WhiteNoiseRawMean) {
  const double m = mean_estimate(SpectralModel(WhiteNoise{1.0}), 200, 0.7, 100, 101, false);
  EXPECT_NEAR(m, 0.4 * kPi, 0.15);
}

TEST(EstimateMonteCarlo, WhiteNoiseSmoothedRootNScaling) {
  const SpectralModel wn(WhiteNoise{1.0});
  std::vector<double> at100, at400;
  mean_estimate(wn, 100, 0.7, 200, 202, true, &at100);
  const double m400 = mean_estimate(wn, 400, 0.7, 200, 203, true, &at400);
  EXPECT_NEAR(m400, 0.4 * kPi, 0.1);
  const double ratio = sample_sd(at400) / sample_sd(at100);
  EXPECT_GE(ratio, 0.35);
  EXPECT_LE(ratio, 0.70);
}

TEST(EstimateMonteCarlo, SinusoidPullsSmoothedEstimate) {
  const SpectralModel model(WhiteNoise{1.0}, {SinusoidAtom{0.5, kPi / 2}});
  const double m = mean_estimate(model, 200, 0.7, 100, 204, true);
  EXPECT_GE(m, 1.30);
  EXPECT_LE(m, 1.60);
}

TEST(EstimateMonteCarlo, Ar1Consistency) {
  const SpectralModel ar(Ar1{0.9, 1.0});
  const double truth = true_quantile(spectral_measure(ar), 0.8);
  auto median_error = [&](std::size_t n, std::uint64_t base) {
    std::vector<double> errors;
    for (std::size_t k = 0; k < 200; ++k) {
      const auto x = generate(ar, n, replicate_seed(base, k)).values;
      errors.push_back(std::abs(estimate_raw(x, 0.8).lambda_hat - truth));
    }
    return median(errors);
  };
  EXPECT_GT(median_error(50, 301), median_error(800, 302));
}

// Directional check on the raw limit: the spread of sqrt(n)(lambda_hat - lambda_p)
// should grow more from n=30 to n=480 for the raw estimator than for the
// smoothed one.
TEST(EstimateMonteCarlo, RawSpreadDoesNotStabilize) {
  const SpectralModel wn(WhiteNoise{1.0});
  const double truth = 0.4 * kPi;
  auto scaled_sd = [&](std::size_t n, bool smoothed, std::uint64_t base) {
    std::vector<double> v;
    for (std::size_t k = 0; k < 500; ++k) {
      const auto x = generate(wn, n, replicate_seed(base, k)).values;
      const double hat = smoothed ? estimate_smoothed(x, 0.7, bartlett_window(default_bandwidth(n))).lambda_hat
                                  : estimate_raw(x, 0.7).lambda_hat;
      v.push_back(std::sqrt(static_cast<double>(n)) * (hat - truth));
    }
    return sample_sd(v);
  };
  const double raw_ratio = scaled_sd(480, false, 401) / scaled_sd(30, false, 402);
  const double smooth_ratio = scaled_sd(480, true, 401) / scaled_sd(30, true, 402);
  RecordProperty("raw_ratio", std::to_string(raw_ratio));
  RecordProperty("smoothed_ratio", std::to_string(smooth_ratio));
  EXPECT_GT(raw_ratio, smooth_ratio) << "raw " << raw_ratio << " smoothed " << smooth_ratio;
}

TEST(EstimateCsv, RowFormat) {
  QuantileEstimate e;
  e.p = 0.7;
  e.lambda_hat = 1.25;
  e.kind = EstimateKind::smoothed;
  e.n = 50;
  e.window = WindowMeta{"bartlett", 4};
  std::ostringstream out;
  write_estimate_csv_header(out);
  write_estimate_csv_row(out, e, 42);
  EXPECT_EQ(out.str(), "p,lambda_hat,kind,n,m,seed\n0.69999999999999996,1.25,smoothed,50,4,42\n");
}
