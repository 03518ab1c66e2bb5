#pragma once

#include <string>

#include "json.hpp"
#include "qkd/system_model.hpp"

namespace qkd {

/// Parses a JSON config document. Unknown keys are rejected and every error
/// names the offending path. All invariants are validated before returning.
SystemConfig parse_config(const std::string& text);

/// Reads and parses a config file; throws ConfigError when unreadable.
SystemConfig load_config_file(const std::string& path);

/// Canonical JSON form with every field spelled out; parse(serialize(c))
/// reproduces c exactly.
nlohmann::json config_to_json(const SystemConfig& config);

std::string serialize_config(const SystemConfig& config);

} // namespace qkd
