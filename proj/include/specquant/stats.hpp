#pragma once

#include <cstddef>
#include <span>

namespace specquant {

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) noexcept;
  double value() const noexcept { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

double mean(std::span<const double> xs);
/// Unbiased (n-1 divisor) sample variance; requires at least two values.
double sample_variance(std::span<const double> xs);
double sample_sd(std::span<const double> xs);
double median(std::span<const double> xs);

struct MomentSummary {
  std::size_t count = 0;
  double mean = 0.0;
  double sd = 0.0;
  double median = 0.0;
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
  /// Jarque-Bera statistic count/6 * (S^2 + K^2/4), chi-square(2) under normality.
  double jarque_bera = 0.0;
  double jarque_bera_p_value = 1.0;
};

MomentSummary summarize(std::span<const double> xs);

/// Chi-square(2) critical value at the given level: -2 log(level).
double jarque_bera_critical(double level);

}  // namespace specquant
