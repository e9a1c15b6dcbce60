// serialize.hpp: versioned JSON documents for steady states and Liouvillians
//
// Complex numbers are [re, im] pairs; matrices are arrays of rows (row-major).

#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "spinbath/dynamics.hpp"
#include "spinbath/model.hpp"

namespace spinbath {

inline constexpr const char* kPointSchema = "spinbath.point";
inline constexpr int kPointSchemaVersion = 1;

nlohmann::json matrix_to_json(const MatrixXc& m);
MatrixXc matrix_from_json(const nlohmann::json& j);

nlohmann::json params_to_json(const ModelParams& params);
ModelParams params_from_json(const nlohmann::json& j);

nlohmann::json liouvillian_to_json(const Liouvillian& l);

// Full single-point report: params, steady state, coherence, magic, warnings.
// The perturbative coherence is null when omega != 1.
nlohmann::json point_report_json(const ModelParams& params, const SteadyState& state,
                                 bool include_liouvillian = false);

// Lists every schema violation; empty means valid.
std::vector<std::string> validate_point_json(const nlohmann::json& j);

}  // namespace spinbath
