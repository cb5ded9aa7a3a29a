#include "specquant/stats.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "specquant/error.hpp"

namespace specquant {

void CompensatedSum::add(double x) noexcept {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    compensation_ += (sum_ - t) + x;
  } else {
    compensation_ += (x - t) + sum_;
  }
  sum_ = t;
}

double mean(std::span<const double> xs) {
  if (xs.empty()) throw ArgumentError("mean: empty sample");
  CompensatedSum sum;
  for (double x : xs) sum.add(x);
  return sum.value() / static_cast<double>(xs.size());
}

double sample_variance(std::span<const double> xs) {
  if (xs.size() < 2) throw ArgumentError("sample_variance: need at least two values");
  const double mu = mean(xs);
  CompensatedSum sum;
  for (double x : xs) sum.add((x - mu) * (x - mu));
  return sum.value() / static_cast<double>(xs.size() - 1);
}

double sample_sd(std::span<const double> xs) { return std::sqrt(sample_variance(xs)); }

double median(std::span<const double> xs) {
  if (xs.empty()) throw ArgumentError("median: empty sample");
  std::vector<double> sorted(xs.begin(), xs.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t mid = sorted.size() / 2;
  if (sorted.size() % 2 == 1) return sorted[mid];
  return 0.5 * (sorted[mid - 1] + sorted[mid]);
}

MomentSummary summarize(std::span<const double> xs) {
  if (xs.size() < 2) throw ArgumentError("summarize: need at least two values");
  MomentSummary out;
  out.count = xs.size();
  out.mean = mean(xs);
  out.sd = sample_sd(xs);
  out.median = median(xs);

  // Population central moments for the skewness/kurtosis ratios.
  CompensatedSum m2, m3, m4;
  for (double x : xs) {
    const double d = x - out.mean;
    m2.add(d * d);
    m3.add(d * d * d);
    m4.add(d * d * d * d);
  }
  const double count = static_cast<double>(xs.size());
  const double var = m2.value() / count;
  if (var > 0.0) {
    out.skewness = (m3.value() / count) / std::pow(var, 1.5);
    out.excess_kurtosis = (m4.value() / count) / (var * var) - 3.0;
  }
  out.jarque_bera =
      count / 6.0 * (out.skewness * out.skewness + 0.25 * out.excess_kurtosis * out.excess_kurtosis);
  out.jarque_bera_p_value = std::exp(-0.5 * out.jarque_bera);
  return out;
}

double jarque_bera_critical(double level) {
  if (!(level > 0.0 && level < 1.0)) throw ArgumentError("jarque_bera_critical: level must be in (0,1)");
  return -2.0 * std::log(level);
}

}  // namespace specquant
