#include "lelm/elm.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lelm/error.hpp"
#include "lelm/random.hpp"

namespace lelm::elm {

std::string_view name(Activation act) {
  switch (act) {
    case Activation::Sigmoid: return "sigmoid";
    case Activation::Sine: return "sine";
    case Activation::Hardlim: return "hardlim";
    case Activation::Triangular: return "triangular";
    case Activation::Radial: return "radial";
  }
  return "unknown";
}

Activation parse_activation(std::string_view text) {
  for (auto act : {Activation::Sigmoid, Activation::Sine, Activation::Hardlim,
                   Activation::Triangular, Activation::Radial}) {
    if (name(act) == text) return act;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown activation '" + std::string(text) + "'");
}

double activate(Activation act, double x) {
  switch (act) {
    case Activation::Sigmoid: return 1.0 / (1.0 + std::exp(-x));
    case Activation::Sine: return std::sin(x);
    case Activation::Hardlim: return x >= 0.0 ? 1.0 : 0.0;
    case Activation::Triangular: return std::max(1.0 - std::abs(x), 0.0);
    case Activation::Radial: return std::exp(-x * x);
  }
  return 0.0;
}

Matrix hidden_matrix(const Matrix& features, const Matrix& weights, Activation act) {
  if (features.cols() != weights.rows()) {
    throw Error(ErrorCode::DimensionMismatch,
                "feature matrix has " + std::to_string(features.cols()) +
                    " columns but the weight matrix has " + std::to_string(weights.rows()) +
                    " rows");
  }
  Matrix h = features * weights;
  h = h.unaryExpr([act](double x) { return activate(act, x); });
  return h;
}

Matrix one_hot(std::span<const int> labels, int class_count) {
  if (class_count < 1) {
    throw Error(ErrorCode::InvalidArgument, "class count must be >= 1");
  }
  Matrix t = Matrix::Zero(static_cast<Eigen::Index>(labels.size()), class_count);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 1 || labels[i] > class_count) {
      throw Error(ErrorCode::LabelOutOfRange,
                  "label " + std::to_string(labels[i]) + " at row " + std::to_string(i) +
                      " is outside 1.." + std::to_string(class_count));
    }
    t(static_cast<Eigen::Index>(i), labels[i] - 1) = 1.0;
  }
  return t;
}

std::vector<int> argmax_rows(const Matrix& scores) {
  std::vector<int> out(static_cast<std::size_t>(scores.rows()));
  for (Eigen::Index i = 0; i < scores.rows(); ++i) {
    Eigen::Index best = 0;
    for (Eigen::Index j = 1; j < scores.cols(); ++j) {
      if (scores(i, j) > scores(i, best)) best = j;
    }
    out[static_cast<std::size_t>(i)] = static_cast<int>(best) + 1;
  }
  return out;
}

double accuracy(std::span<const int> predicted, std::span<const int> truth) {
  if (predicted.size() != truth.size()) {
    throw Error(ErrorCode::LengthMismatch,
                "accuracy: " + std::to_string(predicted.size()) + " predictions vs " +
                    std::to_string(truth.size()) + " labels");
  }
  if (truth.empty()) {
    throw Error(ErrorCode::LengthMismatch, "accuracy needs at least one sample");
  }
  std::size_t hits = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) hits += predicted[i] == truth[i] ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(truth.size());
}

namespace {

struct PreparedTraining {
  Matrix inputs;
  std::optional<features::NormalizationStats> normalization;
  int class_count;
};

PreparedTraining prepare(const features::FeatureMatrix& f, std::span<const int> labels,
                         const TrainConfig& config) {
  if (f.rows() == 0 || f.rows() != labels.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "training set has " + std::to_string(f.rows()) + " rows but " +
                    std::to_string(labels.size()) + " labels");
  }
  if (f.cols() == 0 || static_cast<std::size_t>(f.values.cols()) != f.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "feature matrix has no usable columns");
  }
  if (config.neurons < 1) {
    throw Error(ErrorCode::InvalidArgument, "hidden neuron count must be >= 1");
  }
  if (!f.values.allFinite()) {
    throw Error(ErrorCode::InvalidArgument, "feature matrix contains non-finite values");
  }
  PreparedTraining p;
  p.class_count = config.class_count > 0 ? config.class_count
                                         : *std::max_element(labels.begin(), labels.end());
  if (config.normalize) {
    p.normalization = features::normalize_fit(f.values);
    p.inputs = features::normalize_apply(f.values, *p.normalization);
  } else {
    p.inputs = f.values;
  }
  return p;
}

Matrix model_inputs(const std::vector<features::FeatureId>& model_ids,
                    const std::optional<features::NormalizationStats>& norm,
                    const features::FeatureMatrix& f) {
  if (f.ids != model_ids) {
    throw Error(ErrorCode::FeatureSetMismatch,
                "input features do not match the model's feature list");
  }
  return norm ? features::normalize_apply(f.values, *norm) : f.values;
}

}  // namespace

TrainedModel train(const features::FeatureMatrix& train_features, std::span<const int> labels,
                   const TrainConfig& config, features::FeatureMode mode) {
  auto prepared = prepare(train_features, labels, config);
  auto weights = chaos::build_weight_matrix(config.chaos, train_features.cols(), config.neurons);
  const Matrix h = hidden_matrix(prepared.inputs, weights.values(), config.activation);
  const Matrix t = one_hot(labels, prepared.class_count);
  Matrix beta = linalg::lstsq_min_norm(h, t, config.pinv_tolerance);
  return TrainedModel{std::move(weights),
                      std::move(beta),
                      config.activation,
                      train_features.ids,
                      mode,
                      std::move(prepared.normalization),
                      prepared.class_count};
}

Matrix decision_scores(const TrainedModel& model, const features::FeatureMatrix& f) {
  const Matrix inputs = model_inputs(model.feature_ids, model.normalization, f);
  return hidden_matrix(inputs, model.input_weights.values(), model.activation) *
         model.output_weights;
}

std::vector<int> predict(const TrainedModel& model, const features::FeatureMatrix& f) {
  return argmax_rows(decision_scores(model, f));
}

std::vector<int> predict_windows(const TrainedModel& model,
                                 std::span<const features::SignalWindow> windows,
                                 unsigned threads) {
  return predict(model,
                 features::extract_matrix(windows, model.feature_ids, model.feature_mode, threads));
}

double training_residual(const TrainedModel& model, const features::FeatureMatrix& f,
                         std::span<const int> labels) {
  const Matrix t = one_hot(labels, model.class_count);
  return (decision_scores(model, f) - t).norm();
}

RandomElmModel train_random_baseline(const features::FeatureMatrix& train_features,
                                     std::span<const int> labels, const TrainConfig& config,
                                     std::uint64_t seed) {
  auto prepared = prepare(train_features, labels, config);
  const auto k = static_cast<Eigen::Index>(train_features.cols());
  const auto l = static_cast<Eigen::Index>(config.neurons);
  Rng rng(seed);
  Matrix w(k, l);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < l; ++j) w(i, j) = rng.uniform(-1.0, 1.0);
  }
  Vector b(l);
  for (Eigen::Index j = 0; j < l; ++j) b(j) = rng.uniform(-1.0, 1.0);

  Matrix pre = prepared.inputs * w;
  pre.rowwise() += b.transpose();
  const Matrix h = pre.unaryExpr([act = config.activation](double x) { return activate(act, x); });
  const Matrix t = one_hot(labels, prepared.class_count);
  Matrix beta = linalg::lstsq_min_norm(h, t, config.pinv_tolerance);
  return RandomElmModel{std::move(w),          std::move(b),
                        std::move(beta),       config.activation,
                        train_features.ids,    std::move(prepared.normalization),
                        prepared.class_count};
}

std::vector<int> predict(const RandomElmModel& model, const features::FeatureMatrix& f) {
  const Matrix inputs = model_inputs(model.feature_ids, model.normalization, f);
  Matrix pre = inputs * model.input_weights;
  pre.rowwise() += model.biases.transpose();
  const Matrix h = pre.unaryExpr([act = model.activation](double x) { return activate(act, x); });
  return argmax_rows(h * model.output_weights);
}

}  // namespace lelm::elm
