#include "dtc/io/config.hpp"

#include <fstream>
#include <set>

#include "dtc/error.hpp"

namespace dtc {

using nlohmann::json;

json to_json(const ModelParams& params) {
  json j = {
      {"variant", to_string(params.variant)},
      {"L", params.atoms},
      {"epsilon", params.epsilon},
      {"delta", params.delta},
      {"v", params.interaction},
      {"t1", params.t1},
      {"t2", params.t2},
      {"boundary", to_string(params.boundary)},
  };
  if (params.gamma) j["gamma"] = *params.gamma;
  return j;
}

namespace {

double frequency(const json& value, const std::string& key, const FrequencyParse& rules) {
  if (value.is_number()) return value.get<double>();
  if (value.is_string()) return parse_frequency(value.get<std::string>(), rules);
  fail(ErrorKind::InvalidArgument, "'" + key + "' must be a number or a string with a unit");
}

double number(const json& value, const std::string& key) {
  if (value.is_number()) return value.get<double>();
  if (value.is_string()) return parse_double(value.get<std::string>());
  fail(ErrorKind::InvalidArgument, "'" + key + "' must be a number");
}

void merge_known(ModelParams& params, const json& j, const FrequencyParse& rules,
                 const std::set<std::string>& known);

}  // namespace

void merge_params(ModelParams& params, const json& j, const FrequencyParse& rules) {
  if (!j.is_object()) fail(ErrorKind::InvalidArgument, "parameters must be a JSON object");
  static const std::set<std::string> known = {"variant", "L", "epsilon", "delta", "v",
                                              "t1", "t2", "boundary", "gamma"};
  try {
    merge_known(params, j, rules, known);
  } catch (const json::exception& e) {
    fail(ErrorKind::InvalidArgument, std::string("parameters: ") + e.what());
  }
}

namespace {

void merge_known(ModelParams& params, const json& j, const FrequencyParse& rules,
                 const std::set<std::string>& known) {
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) fail(ErrorKind::InvalidArgument, "unknown parameter '" + key + "'");
    if (key == "variant") {
      params.variant = parse_variant(value.get<std::string>());
    } else if (key == "boundary") {
      params.boundary = parse_boundary(value.get<std::string>());
    } else if (key == "L") {
      const double atoms = number(value, key);
      if (atoms != static_cast<int>(atoms)) fail(ErrorKind::InvalidArgument, "L must be an integer");
      params.atoms = static_cast<int>(atoms);
    } else if (key == "epsilon") {
      params.epsilon = frequency(value, key, rules);
    } else if (key == "delta") {
      params.delta = frequency(value, key, rules);
    } else if (key == "v") {
      params.interaction = frequency(value, key, rules);
    } else if (key == "t1") {
      params.t1 = number(value, key);
    } else if (key == "t2") {
      params.t2 = number(value, key);
    } else if (key == "gamma") {
      if (value.is_null()) {
        params.gamma.reset();
      } else {
        FrequencyParse strict = rules;
        strict.require_suffix = value.is_string();
        params.gamma = frequency(value, key, strict);
      }
    }
  }
}

}  // namespace

ModelParams params_from_json(const json& j, const FrequencyParse& rules) {
  ModelParams params;
  merge_params(params, j, rules);
  params.validate();
  return params;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::InvalidArgument, path + ": " + e.what());
  }
}

}  // namespace dtc
