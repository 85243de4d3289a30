#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>


#include "lelm/elm.hpp"
#include "lelm/features.hpp"

namespace lelm::cli {

/// "sfs" (empty result) or a comma list of ids / canonical names.
std::vector<features::FeatureId> parse_feature_list(std::string_view text);

/// "a:b" or "a:b:step" inclusive ranges, or comma lists.
std::vector<std::size_t> parse_count_range(std::string_view text);
std::vector<double> parse_real_range(std::string_view text);

std::vector<elm::Activation> parse_activation_list(std::string_view text);

/// Splits `--config <file>` out of `args` and returns the remaining args plus
/// the config path ("" when absent).
std::pair<std::vector<std::string>, std::string> extract_config_flag(std::vector<std::string> args);

}  // namespace lelm::cli
