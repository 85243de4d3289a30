#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "lelm/chaos.hpp"
#include "lelm/features.hpp"
#include "lelm/linalg.hpp"

namespace lelm::elm {

enum class Activation { Sigmoid, Sine, Hardlim, Triangular, Radial };

std::string_view name(Activation act);
Activation parse_activation(std::string_view text);

/// sigmoid 1/(1+e^-x), sine sin(x), hardlim [x >= 0], triangular
/// max(1-|x|, 0), radial e^(-x^2).
double activate(Activation act, double x);

/// H(i, j) = act(<row i of F, column j of W>). No bias term.
Matrix hidden_matrix(const Matrix& features, const Matrix& weights, Activation act);

/// N x m indicator matrix; labels are 1-based and must lie in 1..m.
Matrix one_hot(std::span<const int> labels, int class_count);

/// Per-row argmax as 1-based class index; ties go to the lowest index.
std::vector<int> argmax_rows(const Matrix& scores);

double accuracy(std::span<const int> predicted, std::span<const int> truth);

struct TrainConfig {
  std::size_t neurons = 20;
  Activation activation = Activation::Sigmoid;
  chaos::ChaosConfig chaos{};
  /// 0 infers m as the largest training label.
  int class_count = 0;
  bool normalize = true;
  std::optional<double> pinv_tolerance;
};

/// Logistic-ELM model: chaos-seeded input weights (K x L), least-squares
/// output weights (L x m), and everything needed to featurize raw windows.
struct TrainedModel {
  chaos::WeightMatrix input_weights;
  Matrix output_weights;
  Activation activation = Activation::Sigmoid;
  std::vector<features::FeatureId> feature_ids;
  features::FeatureMode feature_mode = features::FeatureMode::Rectified;
  std::optional<features::NormalizationStats> normalization;
  int class_count = 0;

  const chaos::ChaosConfig& chaos() const { return input_weights.source_config(); }
  std::size_t neurons() const { return input_weights.cols(); }
};

TrainedModel train(const features::FeatureMatrix& train_features, std::span<const int> labels,
                   const TrainConfig& config,
                   features::FeatureMode mode = features::FeatureMode::Rectified);

/// Raw network outputs H * beta (after the model's normalization).
Matrix decision_scores(const TrainedModel& model, const features::FeatureMatrix& f);

std::vector<int> predict(const TrainedModel& model, const features::FeatureMatrix& f);

/// Extracts the model's features from raw windows, then predicts.
std::vector<int> predict_windows(const TrainedModel& model,
                                 std::span<const features::SignalWindow> windows,
                                 unsigned threads = 1);

/// ||H beta - T||_F on the given labelled set.
double training_residual(const TrainedModel& model, const features::FeatureMatrix& f,
                         std::span<const int> labels);

/// Conventional ELM used as the comparison baseline: input weights and
/// hidden biases drawn uniformly from (-1, 1) with an explicit seed.
struct RandomElmModel {
  Matrix input_weights;  // K x L
  Vector biases;         // L
  Matrix output_weights;
  Activation activation = Activation::Sigmoid;
  std::vector<features::FeatureId> feature_ids;
  std::optional<features::NormalizationStats> normalization;
  int class_count = 0;
};

RandomElmModel train_random_baseline(const features::FeatureMatrix& train_features,
                                     std::span<const int> labels, const TrainConfig& config,
                                     std::uint64_t seed);

std::vector<int> predict(const RandomElmModel& model, const features::FeatureMatrix& f);

}  // namespace lelm::elm
