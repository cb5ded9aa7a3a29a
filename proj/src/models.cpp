#include "specquant/models.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "quadrature.hpp"
#include "specquant/error.hpp"

namespace specquant {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_frequency(double omega, const char* where) {
  if (!(omega >= -kPi && omega <= kPi)) {
    std::ostringstream msg;
    msg << where << ": frequency " << omega << " outside [-pi, pi]";
    throw DomainError(msg.str());
  }
}

void check_level(double p, const char* where) {
  if (!(p >= 0.0 && p <= 1.0)) {
    std::ostringstream msg;
    msg << where << ": level " << p << " outside [0, 1]";
    throw ArgumentError(msg.str());
  }
}

double noise_density(const NoiseSpec& noise, double omega) {
  return std::visit(
      Overloaded{
          [](const WhiteNoise& w) { return w.variance / kTwoPi; },
          [omega](const Ma1& m) {
            return m.variance / kTwoPi * (1.0 + m.theta * m.theta + 2.0 * m.theta * std::cos(omega));
          },
          [omega](const Ar1& a) {
            return a.variance / kTwoPi / (1.0 - 2.0 * a.coeff * std::cos(omega) + a.coeff * a.coeff);
          },
      },
      noise);
}

}  // namespace

SpectralModel::SpectralModel(NoiseSpec noise, std::vector<SinusoidAtom> atoms)
    : noise_(std::move(noise)), atoms_(std::move(atoms)) {
  const double v = innovation_variance();
  if (!(v > 0.0) || !std::isfinite(v)) throw ArgumentError("SpectralModel: variance must be positive");
  if (const auto* ar = std::get_if<Ar1>(&noise_)) {
    if (!(std::abs(ar->coeff) < 1.0)) throw ArgumentError("SpectralModel: AR(1) coefficient must lie in (-1, 1)");
  }
  if (const auto* ma = std::get_if<Ma1>(&noise_)) {
    if (!std::isfinite(ma->theta)) throw ArgumentError("SpectralModel: MA(1) coefficient must be finite");
  }
  for (const auto& atom : atoms_) {
    if (!(atom.amplitude > 0.0) || !std::isfinite(atom.amplitude)) {
      throw ArgumentError("SpectralModel: sinusoid amplitude must be positive");
    }
    if (!(atom.frequency > 0.0 && atom.frequency < kPi)) {
      throw ArgumentError("SpectralModel: sinusoid frequency must lie in (0, pi)");
    }
  }
}

double SpectralModel::innovation_variance() const noexcept {
  return std::visit([](const auto& n) { return n.variance; }, noise_);
}

double SpectralModel::noise_variance() const noexcept {
  return std::visit(Overloaded{
                        [](const WhiteNoise& w) { return w.variance; },
                        [](const Ma1& m) { return m.variance * (1.0 + m.theta * m.theta); },
                        [](const Ar1& a) { return a.variance / (1.0 - a.coeff * a.coeff); },
                    },
                    noise_);
}

double SpectralModel::variance() const noexcept {
  double total = noise_variance();
  for (const auto& atom : atoms_) total += 0.5 * atom.amplitude * atom.amplitude;
  return total;
}

std::string SpectralModel::tag() const {
  std::ostringstream out;
  std::visit(Overloaded{
                 [&](const WhiteNoise& w) { out << "WN"; if (w.variance != 1.0) out << "(v=" << w.variance << ")"; },
                 [&](const Ma1& m) {
                   out << "MA1(" << m.theta;
                   if (m.variance != 1.0) out << ",v=" << m.variance;
                   out << ")";
                 },
                 [&](const Ar1& a) {
                   out << "AR1(" << a.coeff;
                   if (a.variance != 1.0) out << ",v=" << a.variance;
                   out << ")";
                 },
             },
             noise_);
  for (const auto& atom : atoms_) out << "+cos(" << atom.amplitude << "@" << atom.frequency << ")";
  return out.str();
}

SpectralModel SpectralModel::scaled(double factor) const {
  if (!(factor > 0.0)) throw ArgumentError("SpectralModel::scaled: factor must be positive");
  NoiseSpec noise = noise_;
  std::visit([factor](auto& n) { n.variance *= factor; }, noise);
  std::vector<SinusoidAtom> atoms = atoms_;
  for (auto& atom : atoms) atom.amplitude *= std::sqrt(factor);
  return SpectralModel(std::move(noise), std::move(atoms));
}

double spectral_density(const SpectralModel& model, double omega) {
  check_frequency(omega, "spectral_density");
  return noise_density(model.noise(), omega);
}

double model_autocovariance(const SpectralModel& model, long lag) {
  const long h = lag < 0 ? -lag : lag;
  double value = std::visit(Overloaded{
                                [h](const WhiteNoise& w) { return h == 0 ? w.variance : 0.0; },
                                [h](const Ma1& m) {
                                  if (h == 0) return m.variance * (1.0 + m.theta * m.theta);
                                  return h == 1 ? m.variance * m.theta : 0.0;
                                },
                                [h](const Ar1& a) {
                                  return a.variance * std::pow(a.coeff, static_cast<double>(h)) /
                                         (1.0 - a.coeff * a.coeff);
                                },
                            },
                            model.noise());
  for (const auto& atom : model.atoms()) {
    value += 0.5 * atom.amplitude * atom.amplitude * std::cos(atom.frequency * static_cast<double>(h));
  }
  return value;
}

SpectralMeasure::SpectralMeasure(std::function<double(double)> density, double continuous_mass,
                                 std::vector<PointMass> atoms)
    : density_(std::move(density)), continuous_mass_(continuous_mass), atoms_(std::move(atoms)) {
  if (!density_) throw ArgumentError("SpectralMeasure: density is required");
  if (!(continuous_mass >= 0.0)) throw ArgumentError("SpectralMeasure: continuous mass must be nonnegative");
  std::sort(atoms_.begin(), atoms_.end(),
            [](const PointMass& a, const PointMass& b) { return a.location < b.location; });
  total_mass_ = continuous_mass_;
  for (const auto& atom : atoms_) {
    if (!(atom.mass > 0.0)) throw ArgumentError("SpectralMeasure: atom mass must be positive");
    check_frequency(atom.location, "SpectralMeasure");
    total_mass_ += atom.mass;
  }
  // Atoms come in +/- pairs of equal mass.
  for (std::size_t i = 0, j = atoms_.size(); i < j--; ++i) {
    if (atoms_[i].location != -atoms_[j].location || atoms_[i].mass != atoms_[j].mass) {
      throw ArgumentError("SpectralMeasure: atoms must be symmetric about 0");
    }
  }
  if (!(total_mass_ > 0.0)) throw ArgumentError("SpectralMeasure: total mass must be positive");
}

SpectralMeasure SpectralMeasure::scaled(double factor) const {
  if (!(factor > 0.0)) throw ArgumentError("SpectralMeasure::scaled: factor must be positive");
  std::vector<PointMass> atoms = atoms_;
  for (auto& atom : atoms) atom.mass *= factor;
  auto density = [inner = density_, factor](double omega) { return factor * inner(omega); };
  return SpectralMeasure(density, factor * continuous_mass_, std::move(atoms));
}

SpectralMeasure spectral_measure(const SpectralModel& model) {
  std::vector<PointMass> atoms;
  for (const auto& atom : model.atoms()) {
    const double mass = 0.25 * atom.amplitude * atom.amplitude;
    atoms.push_back({-atom.frequency, mass});
    atoms.push_back({atom.frequency, mass});
  }
  auto density = [noise = model.noise()](double omega) { return noise_density(noise, omega); };
  return SpectralMeasure(density, model.noise_variance(), std::move(atoms));
}

double spectral_cdf(const SpectralMeasure& measure, double omega) {
  check_frequency(omega, "spectral_cdf");
  if (omega == -kPi) return 0.0;
  if (omega == kPi) return measure.total_mass();
  if (omega == 0.0) return 0.5 * measure.total_mass();

  // Integrate from 0 outward and use evenness: F_c(w) = M/2 + sign(w) int_0^|w| f.
  const double half = detail::integrate([&](double x) { return measure.density(x); }, 0.0, std::abs(omega));
  double value = 0.5 * measure.continuous_mass() + (omega > 0.0 ? half : -half);
  for (const auto& atom : measure.atoms()) {
    if (atom.location <= omega) value += atom.mass;
  }
  return std::clamp(value, 0.0, measure.total_mass());
}

double true_quantile(const SpectralMeasure& measure, double p) {
  check_level(p, "true_quantile");
  if (p == 0.0) return -kPi;
  // Densities of the supported families are positive almost everywhere, so
  // full mass is first reached at pi.
  if (p == 1.0) return kPi;

  const double target = p * measure.total_mass();
  for (const auto& atom : measure.atoms()) {
    const double at = spectral_cdf(measure, atom.location);
    if (at - atom.mass < target && target <= at) return atom.location;
  }

  double lo = -kPi;
  double hi = kPi;
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    if (spectral_cdf(measure, mid) >= target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

double population_objective(const SpectralMeasure& measure, double p, double theta) {
  check_level(p, "population_objective");
  check_frequency(theta, "population_objective");
  const double below = detail::integrate(
      [&](double w) { return (1.0 - p) * (theta - w) * measure.density(w); }, -kPi, theta);
  const double above =
      detail::integrate([&](double w) { return p * (w - theta) * measure.density(w); }, theta, kPi);
  double value = below + above;
  for (const auto& atom : measure.atoms()) {
    const double u = atom.location - theta;
    value += atom.mass * (u < 0.0 ? (p - 1.0) * u : p * u);
  }
  return value;
}

}  // namespace specquant
