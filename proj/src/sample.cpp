#include "specquant/sample.hpp"

#include <charconv>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <string>

#include "specquant/error.hpp"
#include "specquant/parallel.hpp"

namespace specquant {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

void validate(const TimeSeries& series) {
  if (series.values.size() < 2) throw ArgumentError("time series needs at least two values");
  for (double v : series.values) {
    if (!std::isfinite(v)) throw ArgumentError("time series contains a non-finite value");
  }
}

std::uint64_t mix64(std::uint64_t x) noexcept {
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t replicate_seed(std::uint64_t base_seed, std::uint64_t k) noexcept {
  return mix64(base_seed + kGolden * (k + 1));
}

std::uint64_t stream_seed(std::uint64_t base_seed, std::uint64_t stream) noexcept {
  return mix64(mix64(base_seed ^ 0xD1B54A32D192ED03ULL) + kGolden * (stream + 1));
}

Realization simulate(const SpectralModel& model, std::size_t n, std::uint64_t seed) {
  if (n < 2) throw ArgumentError("simulate: series length must be at least 2");

  std::mt19937_64 engine(seed);
  std::uniform_real_distribution<double> phase_dist(-kPi, kPi);
  std::normal_distribution<double> normal(0.0, 1.0);

  Realization out;
  out.series.seed = seed;
  out.series.model_tag = model.tag();
  out.phases.reserve(model.atoms().size());
  for (std::size_t j = 0; j < model.atoms().size(); ++j) out.phases.push_back(phase_dist(engine));

  std::vector<double>& x = out.series.values;
  x.resize(n);
  const double sd = std::sqrt(model.innovation_variance());

  if (std::holds_alternative<WhiteNoise>(model.noise())) {
    for (auto& v : x) v = sd * normal(engine);
  } else if (const auto* ma = std::get_if<Ma1>(&model.noise())) {
    double previous = sd * normal(engine);  // burn-in innovation e_0
    for (auto& v : x) {
      const double e = sd * normal(engine);
      v = e + ma->theta * previous;
      previous = e;
    }
  } else {
    const auto& ar = std::get<Ar1>(model.noise());
    // Start from the stationary law so that short series are exactly stationary.
    x[0] = sd / std::sqrt(1.0 - ar.coeff * ar.coeff) * normal(engine);
    for (std::size_t t = 1; t < n; ++t) x[t] = ar.coeff * x[t - 1] + sd * normal(engine);
  }

  for (std::size_t j = 0; j < model.atoms().size(); ++j) {
    const auto& atom = model.atoms()[j];
    for (std::size_t t = 0; t < n; ++t) {
      x[t] += atom.amplitude * std::cos(atom.frequency * static_cast<double>(t + 1) + out.phases[j]);
    }
  }
  return out;
}

TimeSeries generate(const SpectralModel& model, std::size_t n, std::uint64_t seed) {
  return simulate(model, n, seed).series;
}

std::vector<TimeSeries> generate_batch(const SimulationPlan& plan) {
  if (plan.n < 2) throw ArgumentError("generate_batch: n must be at least 2");
  if (plan.replications < 1) throw ArgumentError("generate_batch: replications must be at least 1");
  std::vector<TimeSeries> batch(plan.replications);
  parallel_for(plan.replications, [&](std::size_t k) {
    batch[k] = generate(plan.model, plan.n, replicate_seed(plan.base_seed, k));
  });
  return batch;
}

void write_series_csv(std::ostream& out, const TimeSeries& series) {
  if (!series.model_tag.empty()) out << "# model: " << series.model_tag << '\n';
  out << "# seed: " << series.seed << '\n';
  out << "value\n";
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (double v : series.values) out << v << '\n';
}

TimeSeries read_series_csv(std::istream& in) {
  TimeSeries series;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = trim(line);
    if (text.empty()) continue;
    if (text.front() == '#') {
      const std::string_view body = trim(text.substr(1));
      if (body.starts_with("model:")) {
        series.model_tag = std::string(trim(body.substr(6)));
      } else if (body.starts_with("seed:")) {
        const std::string_view digits = trim(body.substr(5));
        std::uint64_t seed = 0;
        const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), seed);
        if (ec == std::errc() && ptr == digits.data() + digits.size()) series.seed = seed;
      }
      continue;
    }
    if (!header_seen) {
      if (text != "value" && text != "\"value\"") {
        throw ArgumentError("line " + std::to_string(line_no) + ": expected header 'value'");
      }
      header_seen = true;
      continue;
    }
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
      throw ArgumentError("line " + std::to_string(line_no) + ": not a finite number: '" +
                          std::string(text) + "'");
    }
    series.values.push_back(v);
  }
  if (!header_seen) throw ArgumentError("series CSV has no 'value' header");
  validate(series);
  return series;
}

}  // namespace specquant
