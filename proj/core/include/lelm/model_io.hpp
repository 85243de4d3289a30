#pragma once

#include <filesystem>
#include <string>

#include "lelm/elm.hpp"

namespace lelm::elm {

inline constexpr int kModelFormatVersion = 1;

/// JSON document with fields version, activation, chaos {z1, mu},
/// feature_ids, feature_mode, class_count, normalization {means, stds} or
/// null, W and beta as nested row arrays. Doubles use shortest round-trip
/// formatting, so save -> load is bit-exact.
std::string model_to_json(const TrainedModel& model);

/// Parses and validates a model document. The stored W must equal the
/// matrix regenerated from the stored chaos parameters.
TrainedModel model_from_json(const std::string& text);

void save_model(const TrainedModel& model, const std::filesystem::path& path);
TrainedModel load_model(const std::filesystem::path& path);

}  // namespace lelm::elm
