#pragma once

#include <string>

#include "json.hpp"
#include "shiftdet/config.h"

namespace shiftdet::cli {

using Json = nlohmann::ordered_json;

// JSON layout:
//   {"interval": {"a", "b"}, "x", "c", "F": FunctionSpec, "p": FunctionSpec,
//    "shifts": {"gamma": [...], "c": [...], "v": [...]},   optional, defaults to the sine-kernel data
//    "numerics": {...}, "tolerances": {...}}
// FunctionSpec: {"kind": "constant", "value": z} | {"kind": "polynomial", "coefficients": [z...]}
//             | {"kind": "scaled_gaussian_entire", "amplitude": z, "center": r, "width": r}
// where z is a number or [re, im]. Shift indices v are 1-based.
// Throws ConfigError on malformed input.
ProblemConfig parse_config(const Json& j);
Json config_to_json(const ProblemConfig& cfg);

struct LoadedConfig {
  ProblemConfig cfg;
  std::string path;
  std::string sha256;  // hex digest of the file bytes
};

LoadedConfig load_config(const std::string& path);

std::string sha256_hex(const std::string& bytes);

}  // namespace shiftdet::cli
