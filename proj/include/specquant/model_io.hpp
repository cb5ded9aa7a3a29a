#pragma once

// JSON form of a SpectralModel:
//   {"noise": {"family": "ar1", "coeff": 0.9, "variance": 1.0},
//    "atoms": [{"amplitude": 0.5, "frequency": 1.5707963}]}
// family is one of "white_noise", "ma1", "ar1"; coeff is ignored for white noise.

#include <json.hpp>

#include "specquant/models.hpp"

namespace specquant {

nlohmann::json model_to_json(const SpectralModel& model);
/// Throws ArgumentError naming the offending field.
SpectralModel model_from_json(const nlohmann::json& j);

}  // namespace specquant
