#pragma once

#include <string>

#include <json.hpp>

namespace netfp::commands {

// Runs one subcommand (gen, featurize, importance, classify, communities,
// all) from a JSON configuration. Missing keys take their defaults; the
// completed configuration, minus the thread count, is embedded in every
// manifest the command writes. Returns a small JSON summary.
nlohmann::json run(const std::string& command, const nlohmann::json& config);

}  // namespace netfp::commands
