#pragma once

// Parametric spectral models used as ground truth: white noise, MA(1), AR(1)
// and sums of random-phase sinusoids on top of them.

#include <functional>
#include <string>
#include <variant>
#include <vector>

namespace specquant {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

struct WhiteNoise {
  double variance = 1.0;
};

/// X_t = e_t + theta * e_{t-1}
struct Ma1 {
  double theta = 0.0;
  double variance = 1.0;
};

/// X_t = coeff * X_{t-1} + e_t, |coeff| < 1
struct Ar1 {
  double coeff = 0.0;
  double variance = 1.0;
};

using NoiseSpec = std::variant<WhiteNoise, Ma1, Ar1>;

/// R cos(frequency * t + phi) with phi ~ Uniform(-pi, pi).
struct SinusoidAtom {
  double amplitude = 0.0;
  double frequency = 0.0;
};

/// Noise family plus optional sinusoid atoms. Invariants are checked on
/// construction; ArgumentError is thrown on violation.
class SpectralModel {
 public:
  /// Unit-variance white noise.
  SpectralModel() : SpectralModel(WhiteNoise{}) {}
  explicit SpectralModel(NoiseSpec noise, std::vector<SinusoidAtom> atoms = {});

  const NoiseSpec& noise() const noexcept { return noise_; }
  const std::vector<SinusoidAtom>& atoms() const noexcept { return atoms_; }

  /// Innovation variance of the noise family.
  double innovation_variance() const noexcept;
  /// R_X(0): variance of the noise process.
  double noise_variance() const noexcept;
  /// R_Y(0) = R_X(0) + sum R_j^2 / 2.
  double variance() const noexcept;

  /// Short human-readable label, e.g. "AR1(0.9)+cos(0.5@1.5708)".
  std::string tag() const;

  /// Same model with every variance multiplied by factor and every amplitude
  /// by sqrt(factor).
  SpectralModel scaled(double factor) const;

 private:
  NoiseSpec noise_;
  std::vector<SinusoidAtom> atoms_;
};

/// Density of the continuous (noise) part at omega in [-pi, pi].
double spectral_density(const SpectralModel& model, double omega);

/// Autocovariance R_Y(h) of the model, atoms included.
double model_autocovariance(const SpectralModel& model, long lag);

struct PointMass {
  double location = 0.0;
  double mass = 0.0;
};

/// Symmetric spectral measure on [-pi, pi]: an even density plus point masses
/// placed in +/- pairs.
class SpectralMeasure {
 public:
  /// `continuous_mass` must equal the integral of `density` over [-pi, pi].
  SpectralMeasure(std::function<double(double)> density, double continuous_mass,
                  std::vector<PointMass> atoms = {});

  double density(double omega) const { return density_(omega); }
  const std::vector<PointMass>& atoms() const noexcept { return atoms_; }
  double continuous_mass() const noexcept { return continuous_mass_; }
  double total_mass() const noexcept { return total_mass_; }

  SpectralMeasure scaled(double factor) const;

 private:
  std::function<double(double)> density_;
  double continuous_mass_;
  std::vector<PointMass> atoms_;  // sorted by location
  double total_mass_;
};

/// Each sinusoid contributes mass R^2/4 at +lambda and at -lambda.
SpectralMeasure spectral_measure(const SpectralModel& model);

/// F(omega) = integral of the density over [-pi, omega] plus the masses at
/// locations <= omega. Right-continuous.
double spectral_cdf(const SpectralMeasure& measure, double omega);

/// inf{omega : F(omega) >= p * total_mass}; bisection to 1e-10 rad with exact
/// atom locations returned when a jump crosses the level.
double true_quantile(const SpectralMeasure& measure, double p);

/// S(theta) = integral of rho_p(omega - theta) against the measure.
double population_objective(const SpectralMeasure& measure, double p, double theta);

}  // namespace specquant
