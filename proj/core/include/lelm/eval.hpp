#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lelm/dataio.hpp"
#include "lelm/elm.hpp"
#include "lelm/sfs.hpp"

namespace lelm::eval {

using features::FeatureId;

/// Feature matrices and labels for the three splits of one dataset.
struct ExperimentData {
  features::FeatureMatrix train, verify, test;
  std::vector<int> train_labels, verify_labels, test_labels;
  int class_count = 0;
};

ExperimentData prepare_features(const dataio::SplitDataset& data, std::span<const FeatureId> ids,
                                features::FeatureMode mode = features::FeatureMode::Rectified,
                                unsigned threads = 1);

/// Train on the train split, return accuracy on verify.
double verify_accuracy(const ExperimentData& data, const elm::TrainConfig& config);

/// Accuracy grid over two parameter axes.
struct SweepResult {
  std::string row_axis, col_axis;
  std::vector<std::string> row_labels, col_labels;
  std::vector<std::vector<double>> accuracy;  // [row][col]
  int repetitions = 1;

  /// Cells (row, col) attaining the maximum accuracy, in row-major order.
  std::vector<std::pair<std::size_t, std::size_t>> argmax_cells() const;
};

/// Rows are activations, columns hidden-neuron counts.
SweepResult sweep_neurons(const ExperimentData& data, std::span<const elm::Activation> activations,
                          std::span<const std::size_t> neurons, const elm::TrainConfig& base,
                          unsigned threads = 1);

/// Rows are z1 values, columns mu values.
SweepResult sweep_chaos(const ExperimentData& data, std::span<const double> z1_values,
                        std::span<const double> mu_values, const elm::TrainConfig& base,
                        unsigned threads = 1);

/// Covariance over the product of standard deviations (population
/// convention). Throws LengthMismatch or ConstantInput.
double pearson(std::span<const double> xs, std::span<const double> ys);

/// Accuracy bins: {1}, [0.99,1), [0.98,0.99), ..., [0.90,0.91), [0,0.90).
struct AccuracyBin {
  std::string label;
  double lower = 0, upper = 0;  // [lower, upper); the {1} bin has lower == upper == 1
};
const std::vector<AccuracyBin>& stability_bins();
/// Fraction of `accuracies` falling in each bin.
std::vector<double> bin_densities(std::span<const double> accuracies);

struct Distribution {
  std::vector<double> accuracies;
  double mean = 0, variance = 0, max = 0;
  std::vector<double> densities;
};

struct StabilityReport {
  Distribution logistic, random_baseline;
  std::size_t trials = 0;
  std::uint64_t base_seed = 0;
};

/// `trials` independent logistic-ELM trainings against random ELMs
/// re-seeded with base_seed + trial. Both are scored on the test split.
StabilityReport stability_study(const ExperimentData& data, const elm::TrainConfig& config,
                                std::size_t trials, std::uint64_t base_seed = 1,
                                unsigned threads = 1);

struct StageTiming {
  std::string name;
  double mean = 0, min = 0;  // seconds
};

struct LatencyReport {
  std::size_t samples = 0;
  std::size_t repetitions = 0;
  std::vector<StageTiming> stages;  // extraction, hidden, output, argmax
  StageTiming total;
};

/// Times end-to-end prediction from raw windows (no I/O). One
/// untimed warm-up pass precedes `repetitions` timed passes.
LatencyReport bench_inference(const elm::TrainedModel& model,
                              std::span<const features::SignalWindow> windows,
                              std::size_t repetitions = 5, unsigned threads = 1);

struct PipelineConfig {
  elm::TrainConfig train{};
  features::FeatureMode mode = features::FeatureMode::Rectified;
  /// Fixed feature list; when empty the subset is chosen by SFS.
  std::vector<FeatureId> features;
  unsigned threads = 1;
};

struct PipelineResult {
  std::optional<sfs::SfsTrace> sfs;
  elm::TrainedModel model;
  double verify_accuracy = 0;
  double test_accuracy = 0;
};

/// Feature selection (optional), training on train, scoring verify and test.
PipelineResult run_pipeline(const dataio::SplitDataset& data, const PipelineConfig& config);

struct ConditionResult {
  std::string name;
  std::vector<FeatureId> features;
  double verify_accuracy = 0;
  double test_accuracy = 0;
};

struct MultiConditionReport {
  std::vector<ConditionResult> conditions;
  double average_test_accuracy = 0;
};

/// Independent pipelines per dataset.
MultiConditionReport multi_condition_eval(
    std::span<const std::pair<std::string, dataio::SplitDataset>> datasets,
    const PipelineConfig& config);
MultiConditionReport multi_condition_eval(std::span<const std::filesystem::path> manifests,
                                          const PipelineConfig& config);

}  // namespace lelm::eval
