#pragma once

// JSON form of ModelParams. Keys: variant, L, epsilon, delta, v, t1, t2, boundary, gamma.
// Frequency values may be numbers (rad/us) or strings with a unit suffix.

#include <nlohmann/json.hpp>

#include "dtc/model.hpp"
#include "dtc/units.hpp"

namespace dtc {

nlohmann::json to_json(const ModelParams& params);

/// Overlays the keys present in `j` onto `params`; unknown keys are rejected.
void merge_params(ModelParams& params, const nlohmann::json& j, const FrequencyParse& rules = {});

ModelParams params_from_json(const nlohmann::json& j, const FrequencyParse& rules = {});

/// Reads a JSON file; errors are ErrorKind::Io or InvalidArgument.
nlohmann::json read_json_file(const std::string& path);

}  // namespace dtc
