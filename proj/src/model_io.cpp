#include "specquant/model_io.hpp"

#include <string>

#include "specquant/error.hpp"

namespace specquant {

namespace {

double number_field(const nlohmann::json& j, const char* key, double fallback, const std::string& path) {
  if (!j.contains(key)) return fallback;
  const auto& value = j.at(key);
  if (!value.is_number()) throw ArgumentError(path + "." + key + " must be a number");
  return value.get<double>();
}

}  // namespace

nlohmann::json model_to_json(const SpectralModel& model) {
  nlohmann::json noise;
  if (const auto* w = std::get_if<WhiteNoise>(&model.noise())) {
    noise = {{"family", "white_noise"}, {"variance", w->variance}};
  } else if (const auto* m = std::get_if<Ma1>(&model.noise())) {
    noise = {{"family", "ma1"}, {"coeff", m->theta}, {"variance", m->variance}};
  } else {
    const auto& a = std::get<Ar1>(model.noise());
    noise = {{"family", "ar1"}, {"coeff", a.coeff}, {"variance", a.variance}};
  }
  nlohmann::json atoms = nlohmann::json::array();
  for (const auto& atom : model.atoms()) {
    atoms.push_back({{"amplitude", atom.amplitude}, {"frequency", atom.frequency}});
  }
  return {{"noise", noise}, {"atoms", atoms}};
}

SpectralModel model_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("noise") || !j.at("noise").is_object()) {
    throw ArgumentError("model: missing object field 'noise'");
  }
  const auto& noise = j.at("noise");
  if (!noise.contains("family") || !noise.at("family").is_string()) {
    throw ArgumentError("model.noise.family must be a string");
  }
  const auto family = noise.at("family").get<std::string>();
  const double variance = number_field(noise, "variance", 1.0, "model.noise");
  const double coeff = number_field(noise, "coeff", 0.0, "model.noise");

  NoiseSpec spec;
  if (family == "white_noise" || family == "wn") {
    spec = WhiteNoise{variance};
  } else if (family == "ma1") {
    spec = Ma1{coeff, variance};
  } else if (family == "ar1") {
    spec = Ar1{coeff, variance};
  } else {
    throw ArgumentError("model.noise.family: unknown family '" + family + "'");
  }

  std::vector<SinusoidAtom> atoms;
  if (j.contains("atoms")) {
    if (!j.at("atoms").is_array()) throw ArgumentError("model.atoms must be an array");
    std::size_t index = 0;
    for (const auto& atom : j.at("atoms")) {
      const std::string path = "model.atoms[" + std::to_string(index++) + "]";
      if (!atom.is_object()) throw ArgumentError(path + " must be an object");
      atoms.push_back({number_field(atom, "amplitude", 0.0, path), number_field(atom, "frequency", 0.0, path)});
    }
  }
  try {
    return SpectralModel(spec, std::move(atoms));
  } catch (const ArgumentError& e) {
    throw ArgumentError(std::string("model: ") + e.what());
  }
}

}  // namespace specquant
