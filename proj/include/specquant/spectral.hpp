#pragma once

// Sample autocovariances, raw/extended periodograms and lag-window smoothed
// spectral density estimates.

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace specquant {

enum class PeriodogramKind { raw, extended, smoothed };

std::string to_string(PeriodogramKind kind);

struct WindowMeta {
  std::string name;
  std::size_t m = 0;
};

struct Periodogram {
  std::vector<double> grid;
  std::vector<double> ordinates;
  PeriodogramKind kind = PeriodogramKind::raw;
  std::size_t n = 0;
  std::optional<WindowMeta> window;
  /// Number of negative smoothed ordinates clamped to zero.
  std::size_t clamped = 0;
};

/// Lag window phi(h/m). The shape is even, equals 1 at 0, is bounded by 1 and
/// vanishes outside [-1, 1].
class LagWindow {
 public:
  LagWindow(std::string name, std::function<double(double)> shape, std::size_t m);

  const std::string& name() const noexcept { return name_; }
  std::size_t bandwidth() const noexcept { return m_; }

  /// shape(x), zero for |x| > 1.
  double shape(double x) const;
  /// phi(h/m)
  double weight(long lag) const { return shape(static_cast<double>(lag) / static_cast<double>(m_)); }

  WindowMeta meta() const { return {name_, m_}; }

 private:
  std::string name_;
  std::function<double(double)> shape_;
  std::size_t m_;
};

/// Triangular window 1 - |x|. Its smoothed estimate is a Fejer-kernel average
/// of the periodogram and therefore nonnegative.
LagWindow bartlett_window(std::size_t m);
/// Parzen window (nonnegative spectral window).
LagWindow parzen_window(std::size_t m);
/// Tukey-Hanning window (1 + cos(pi x)) / 2; can produce negative estimates.
LagWindow tukey_hanning_window(std::size_t m);
/// Rectangular window; can produce negative estimates.
LagWindow truncated_window(std::size_t m);
/// Looks up one of "bartlett", "parzen", "tukey-hanning", "truncated".
LagWindow make_window(const std::string& name, std::size_t m);

/// floor(n^0.4), clamped to [1, n - 1].
std::size_t default_bandwidth(std::size_t n);

/// The symmetric lattice {pi k / n : k = -n..n} (2n + 1 points, endpoints +/-pi).
std::vector<double> symmetric_grid(std::size_t n);
/// Fourier frequencies 2 pi s / n lying in (-pi, pi].
std::vector<double> fourier_frequencies(std::size_t n);

/// C_n(h) = (1/n) sum_{s=1}^{n-h} X_s X_{s+h} for h = 0..max_lag, via FFT.
std::vector<double> autocovariance(std::span<const double> series, std::size_t max_lag);

/// I(omega) = |sum_j X_j e^{i j omega}|^2 / (2 pi n). Uses an FFT when the grid
/// is a symmetric lattice {pi k / M}, a direct transform otherwise.
Periodogram raw_periodogram(std::span<const double> series, std::span<const double> grid);

/// I*(omega) = sum_{|h|<n} C_n(h) e^{-i h omega} = 2 pi I(omega), evaluated as a
/// lag sum. The default grid is symmetric_grid(n).
Periodogram extended_periodogram(std::span<const double> series);
Periodogram extended_periodogram(std::span<const double> series, std::span<const double> grid);

/// f(omega) = (1/2pi) sum_{|h|<=m} phi(h/m) C_n(h) e^{-i h omega}. Integrates to
/// C_n(0) over [-pi, pi]. Negative ordinates are clamped to zero and counted.
/// Throws ArgumentError unless m < n.
Periodogram smoothed_density(std::span<const double> series, const LagWindow& window,
                             std::span<const double> grid);

/// Two-column CSV (frequency, ordinate) preceded by '#' comment lines recording
/// kind, n, window and m.
void write_periodogram_csv(std::ostream& out, const Periodogram& pgram);

}  // namespace specquant
