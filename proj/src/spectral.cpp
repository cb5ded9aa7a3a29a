#include "specquant/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <utility>

#include "fft.hpp"
#include "specquant/error.hpp"
#include "specquant/models.hpp"

namespace specquant {

namespace {

void check_series(std::span<const double> series, const char* where) {
  if (series.size() < 2) throw ArgumentError(std::string(where) + ": series needs at least two values");
}

void check_grid(std::span<const double> grid, const char* where) {
  if (grid.empty()) throw ArgumentError(std::string(where) + ": empty frequency grid");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= -kPi && grid[i] <= kPi)) {
      throw DomainError(std::string(where) + ": grid frequency outside [-pi, pi]");
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw ArgumentError(std::string(where) + ": grid must be strictly increasing");
    }
  }
}

// Returns M if grid == {pi k / M : k = -M..M}, else 0.
std::size_t symmetric_lattice_order(std::span<const double> grid) {
  if (grid.size() < 3 || grid.size() % 2 == 0) return 0;
  const std::size_t order = grid.size() / 2;
  const double m = static_cast<double>(order);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double expected = kPi * ((static_cast<double>(i) - m) / m);
    if (std::abs(grid[i] - expected) > 1e-12) return 0;
  }
  return order;
}

// c_0 + 2 sum_{h>=1} c_h cos(h omega)
double cosine_sum(std::span<const double> coefficients, double omega) {
  double acc = 0.0;
  for (std::size_t h = coefficients.size(); h-- > 1;) {
    acc += coefficients[h] * std::cos(static_cast<double>(h) * omega);
  }
  return coefficients[0] + 2.0 * acc;
}

}  // namespace

std::string to_string(PeriodogramKind kind) {
  switch (kind) {
    case PeriodogramKind::raw: return "raw";
    case PeriodogramKind::extended: return "extended";
    case PeriodogramKind::smoothed: return "smoothed";
  }
  return "unknown";
}

LagWindow::LagWindow(std::string name, std::function<double(double)> shape, std::size_t m)
    : name_(std::move(name)), shape_(std::move(shape)), m_(m) {
  if (m_ < 1) throw ArgumentError("lag window bandwidth m must be at least 1");
  if (!shape_) throw ArgumentError("lag window needs a shape function");
}

double LagWindow::shape(double x) const {
  if (std::abs(x) > 1.0) return 0.0;
  return shape_(x);
}

LagWindow bartlett_window(std::size_t m) {
  return LagWindow("bartlett", [](double x) { return 1.0 - std::abs(x); }, m);
}

LagWindow parzen_window(std::size_t m) {
  return LagWindow(
      "parzen",
      [](double x) {
        const double a = std::abs(x);
        if (a <= 0.5) return 1.0 - 6.0 * a * a + 6.0 * a * a * a;
        const double b = 1.0 - a;
        return 2.0 * b * b * b;
      },
      m);
}

LagWindow tukey_hanning_window(std::size_t m) {
  return LagWindow("tukey-hanning", [](double x) { return 0.5 * (1.0 + std::cos(kPi * x)); }, m);
}

LagWindow truncated_window(std::size_t m) {
  return LagWindow("truncated", [](double) { return 1.0; }, m);
}

LagWindow make_window(const std::string& name, std::size_t m) {
  if (name == "bartlett") return bartlett_window(m);
  if (name == "parzen") return parzen_window(m);
  if (name == "tukey-hanning") return tukey_hanning_window(m);
  if (name == "truncated") return truncated_window(m);
  throw ArgumentError("unknown lag window '" + name + "'");
}

std::size_t default_bandwidth(std::size_t n) {
  if (n < 2) throw ArgumentError("default_bandwidth: n must be at least 2");
  const auto m = static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(n), 0.4)));
  return std::clamp<std::size_t>(m, 1, n - 1);
}

std::vector<double> symmetric_grid(std::size_t n) {
  if (n < 1) throw ArgumentError("symmetric_grid: n must be positive");
  std::vector<double> grid(2 * n + 1);
  const double order = static_cast<double>(n);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid[i] = kPi * ((static_cast<double>(i) - order) / order);
  }
  return grid;
}

std::vector<double> fourier_frequencies(std::size_t n) {
  if (n < 1) throw ArgumentError("fourier_frequencies: n must be positive");
  const long lo = -static_cast<long>((n - 1) / 2);
  const long hi = static_cast<long>(n / 2);
  std::vector<double> grid;
  grid.reserve(n);
  for (long s = lo; s <= hi; ++s) {
    grid.push_back(kTwoPi * (static_cast<double>(s) / static_cast<double>(n)));
  }
  return grid;
}

std::vector<double> autocovariance(std::span<const double> series, std::size_t max_lag) {
  const std::size_t n = series.size();
  if (n == 0) throw ArgumentError("autocovariance: empty series");
  if (max_lag >= n) throw ArgumentError("autocovariance: max_lag must be smaller than the series length");

  // Zero padding to 2n turns the circular correlation into the linear one.
  const std::size_t length = 2 * n;
  std::vector<double> padded(length, 0.0);
  std::copy(series.begin(), series.end(), padded.begin());
  auto spectrum = detail::real_dft(padded);
  for (auto& z : spectrum) z = std::norm(z);
  const auto circular = detail::inverse_real_dft(spectrum, length);

  const double scale = 1.0 / (static_cast<double>(length) * static_cast<double>(n));
  std::vector<double> acov(max_lag + 1);
  for (std::size_t h = 0; h <= max_lag; ++h) acov[h] = circular[h] * scale;
  return acov;
}

Periodogram raw_periodogram(std::span<const double> series, std::span<const double> grid) {
  check_series(series, "raw_periodogram");
  check_grid(grid, "raw_periodogram");

  const std::size_t n = series.size();
  const double scale = 1.0 / (kTwoPi * static_cast<double>(n));
  Periodogram out;
  out.kind = PeriodogramKind::raw;
  out.n = n;
  out.grid.assign(grid.begin(), grid.end());
  out.ordinates.resize(grid.size());

  if (const std::size_t order = symmetric_lattice_order(grid); order > 0) {
    // pi k / M are the Fourier frequencies of length 2M; fold the series onto
    // that period (exact, since e^{i j omega_k} is 2M-periodic in j).
    const std::size_t length = 2 * order;
    std::vector<double> folded(length, 0.0);
    for (std::size_t j = 0; j < n; ++j) folded[j % length] += series[j];
    const auto spectrum = detail::real_dft(folded);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const std::size_t k = i >= order ? i - order : order - i;
      out.ordinates[i] = std::norm(spectrum[k]) * scale;
    }
    return out;
  }

  for (std::size_t i = 0; i < grid.size(); ++i) {
    double re = 0.0;
    double im = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double phase = static_cast<double>(j + 1) * grid[i];
      re += series[j] * std::cos(phase);
      im += series[j] * std::sin(phase);
    }
    out.ordinates[i] = (re * re + im * im) * scale;
  }
  return out;
}

Periodogram extended_periodogram(std::span<const double> series) {
  check_series(series, "extended_periodogram");
  const auto grid = symmetric_grid(series.size());
  return extended_periodogram(series, grid);
}

Periodogram extended_periodogram(std::span<const double> series, std::span<const double> grid) {
  check_series(series, "extended_periodogram");
  check_grid(grid, "extended_periodogram");
  const auto acov = autocovariance(series, series.size() - 1);

  Periodogram out;
  out.kind = PeriodogramKind::extended;
  out.n = series.size();
  out.grid.assign(grid.begin(), grid.end());
  out.ordinates.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) out.ordinates[i] = cosine_sum(acov, grid[i]);
  return out;
}

Periodogram smoothed_density(std::span<const double> series, const LagWindow& window,
                             std::span<const double> grid) {
  check_series(series, "smoothed_density");
  check_grid(grid, "smoothed_density");
  const std::size_t m = window.bandwidth();
  if (m >= series.size()) throw ArgumentError("smoothed_density: bandwidth m must be smaller than n");

  auto weighted = autocovariance(series, m);
  for (std::size_t h = 1; h <= m; ++h) weighted[h] *= window.weight(static_cast<long>(h));

  Periodogram out;
  out.kind = PeriodogramKind::smoothed;
  out.n = series.size();
  out.window = window.meta();
  out.grid.assign(grid.begin(), grid.end());
  out.ordinates.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double value = cosine_sum(weighted, grid[i]) / kTwoPi;
    if (value < 0.0) {
      value = 0.0;
      ++out.clamped;
    }
    out.ordinates[i] = value;
  }
  return out;
}

void write_periodogram_csv(std::ostream& out, const Periodogram& pgram) {
  out << "# kind: " << to_string(pgram.kind) << '\n';
  out << "# n: " << pgram.n << '\n';
  if (pgram.window) {
    out << "# window: " << pgram.window->name << '\n';
    out << "# m: " << pgram.window->m << '\n';
  }
  out << "frequency,ordinate\n";
  const auto precision = out.precision();
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (std::size_t i = 0; i < pgram.grid.size(); ++i) {
    out << pgram.grid[i] << ',' << pgram.ordinates[i] << '\n';
  }
  out.precision(precision);
}

}  // namespace specquant
