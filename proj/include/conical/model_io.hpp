#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "conical/conical.hpp"

namespace conical {

/// Bumped whenever the on-disk layout changes. Newer files are refused.
inline constexpr int kModelFormatVersion = 1;

nlohmann::json model_to_json(const ConicalModel& model);
ConicalModel model_from_json(const nlohmann::json& doc);

/// Compact JSON followed by a newline. Doubles are written in shortest
/// round-trip form, so a saved model predicts bit-identically after loading.
std::string serialize_model(const ConicalModel& model);

void save_model(const ConicalModel& model, const std::filesystem::path& path);
ConicalModel load_model(const std::filesystem::path& path);

}  // namespace conical
