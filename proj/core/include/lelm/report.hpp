#pragma once

#include <string>
#include <vector>

#include "lelm/eval.hpp"

namespace lelm::report {

/// Left-aligned columns separated by two spaces; no trailing whitespace.
std::string format_table(const std::vector<std::vector<std::string>>& rows);

/// Fixed-point with `digits` decimals.
std::string fixed(double v, int digits = 4);

std::string to_json(const eval::SweepResult& sweep);
std::string to_table(const eval::SweepResult& sweep);
std::string to_csv(const eval::SweepResult& sweep);

std::string to_json(const eval::StabilityReport& report);
std::string to_table(const eval::StabilityReport& report);

std::string to_json(const eval::LatencyReport& report);
std::string to_table(const eval::LatencyReport& report);

std::string to_json(const eval::MultiConditionReport& report);
std::string to_table(const eval::MultiConditionReport& report);

/// Summary of one pipeline run (features, accuracies, optional SFS trace).
std::string to_json(const eval::PipelineResult& result);

}  // namespace lelm::report
