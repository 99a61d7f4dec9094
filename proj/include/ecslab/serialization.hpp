#pragma once

#include <json.hpp>

#include "ecslab/coherent.hpp"

namespace ecslab {

// {"n_modes": N, "terms": [{"coeff_re": x, "coeff_im": y,
//  "amps": [[re, im], ...]}, ...]}
nlohmann::json to_json(const CoherentSuperposition& s);
CoherentSuperposition superposition_from_json(const nlohmann::json& j);

}  // namespace ecslab
