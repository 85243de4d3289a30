#include "lelm/eval.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>

#include "lelm/error.hpp"
#include "lelm/parallel.hpp"

namespace lelm::eval {

ExperimentData prepare_features(const dataio::SplitDataset& data, std::span<const FeatureId> ids,
                                features::FeatureMode mode, unsigned threads) {
  ExperimentData out;
  out.train = features::extract_matrix(data.train, ids, mode, threads);
  out.verify = features::extract_matrix(data.verify, ids, mode, threads);
  out.test = features::extract_matrix(data.test, ids, mode, threads);
  out.train_labels = dataio::labels_of(data.train);
  out.verify_labels = dataio::labels_of(data.verify);
  out.test_labels = dataio::labels_of(data.test);
  out.class_count = data.class_count;
  return out;
}

namespace {

elm::TrainConfig with_classes(elm::TrainConfig cfg, const ExperimentData& data) {
  if (cfg.class_count <= 0) cfg.class_count = data.class_count;
  return cfg;
}

std::string real_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

Distribution summarize(std::vector<double> acc) {
  Distribution d;
  const auto n = static_cast<double>(acc.size());
  // Shifted by the first value so identical accuracies give exactly 0.
  const double pivot = acc.front();
  double sum = 0;
  for (double a : acc) sum += a - pivot;
  const double shift = sum / n;
  double ss = 0;
  for (double a : acc) ss += (a - pivot - shift) * (a - pivot - shift);
  d.mean = pivot + shift;
  d.variance = ss / n;
  d.max = *std::max_element(acc.begin(), acc.end());
  d.densities = bin_densities(acc);
  d.accuracies = std::move(acc);
  return d;
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

double verify_accuracy(const ExperimentData& data, const elm::TrainConfig& config) {
  const auto model = elm::train(data.train, data.train_labels, with_classes(config, data));
  return elm::accuracy(elm::predict(model, data.verify), data.verify_labels);
}

std::vector<std::pair<std::size_t, std::size_t>> SweepResult::argmax_cells() const {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& row : accuracy) {
    for (double a : row) best = std::max(best, a);
  }
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t r = 0; r < accuracy.size(); ++r) {
    for (std::size_t c = 0; c < accuracy[r].size(); ++c) {
      if (accuracy[r][c] == best) cells.emplace_back(r, c);
    }
  }
  return cells;
}

SweepResult sweep_neurons(const ExperimentData& data, std::span<const elm::Activation> activations,
                          std::span<const std::size_t> neurons, const elm::TrainConfig& base,
                          unsigned threads) {
  if (activations.empty() || neurons.empty()) {
    throw Error(ErrorCode::InvalidArgument, "neuron sweep needs activations and neuron counts");
  }
  for (std::size_t i = 0; i < neurons.size(); ++i) {
    if (neurons[i] < 1 || (i > 0 && neurons[i] <= neurons[i - 1])) {
      throw Error(ErrorCode::InvalidArgument, "neuron counts must be ascending and >= 1");
    }
  }
  SweepResult result;
  result.row_axis = "activation";
  result.col_axis = "neurons";
  for (auto a : activations) result.row_labels.emplace_back(elm::name(a));
  for (auto l : neurons) result.col_labels.push_back(std::to_string(l));
  result.accuracy.assign(activations.size(), std::vector<double>(neurons.size(), 0.0));
  parallel_for(activations.size() * neurons.size(), threads, [&](std::size_t cell) {
    const std::size_t r = cell / neurons.size();
    const std::size_t c = cell % neurons.size();
    elm::TrainConfig cfg = base;
    cfg.activation = activations[r];
    cfg.neurons = neurons[c];
    result.accuracy[r][c] = verify_accuracy(data, cfg);
  });
  return result;
}

SweepResult sweep_chaos(const ExperimentData& data, std::span<const double> z1_values,
                        std::span<const double> mu_values, const elm::TrainConfig& base,
                        unsigned threads) {
  if (z1_values.empty() || mu_values.empty()) {
    throw Error(ErrorCode::InvalidArgument, "chaos sweep needs z1 and mu values");
  }
  for (double z1 : z1_values) {
    for (double mu : mu_values) chaos::validate({z1, mu});
  }
  SweepResult result;
  result.row_axis = "z1";
  result.col_axis = "mu";
  for (double z : z1_values) result.row_labels.push_back(real_label(z));
  for (double m : mu_values) result.col_labels.push_back(real_label(m));
  result.accuracy.assign(z1_values.size(), std::vector<double>(mu_values.size(), 0.0));
  parallel_for(z1_values.size() * mu_values.size(), threads, [&](std::size_t cell) {
    const std::size_t r = cell / mu_values.size();
    const std::size_t c = cell % mu_values.size();
    elm::TrainConfig cfg = base;
    cfg.chaos = {z1_values[r], mu_values[c]};
    result.accuracy[r][c] = verify_accuracy(data, cfg);
  });
  return result;
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw Error(ErrorCode::LengthMismatch, "pearson needs two equal-length vectors of length >= 2");
  }
  const auto n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw Error(ErrorCode::ConstantInput, "pearson is undefined for a constant vector");
  }
  const double r = sxy / (std::sqrt(sxx) * std::sqrt(syy));
  return std::clamp(r, -1.0, 1.0);
}

const std::vector<AccuracyBin>& stability_bins() {
  static const std::vector<AccuracyBin> bins = [] {
    std::vector<AccuracyBin> b;
    b.push_back({"1", 1.0, 1.0});
    for (int k = 99; k >= 90; --k) {
      char label[32];
      std::snprintf(label, sizeof label, "[%.2f,%.2f)", k / 100.0, (k + 1) / 100.0);
      b.push_back({label, k / 100.0, (k + 1) / 100.0});
    }
    b.push_back({"[0,0.90)", 0.0, 0.90});
    return b;
  }();
  return bins;
}

std::vector<double> bin_densities(std::span<const double> accuracies) {
  const auto& bins = stability_bins();
  std::vector<double> density(bins.size(), 0.0);
  if (accuracies.empty()) return density;
  for (double a : accuracies) {
    for (std::size_t b = 0; b < bins.size(); ++b) {
      const bool hit = bins[b].lower == bins[b].upper
                           ? a == bins[b].lower
                           // Small slack so 0.99 computed as 99/100 lands in [0.99, 1).
                           : a >= bins[b].lower - 1e-12 && a < bins[b].upper - 1e-12;
      if (hit) {
        density[b] += 1.0;
        break;
      }
    }
  }
  for (auto& d : density) d /= static_cast<double>(accuracies.size());
  return density;
}

StabilityReport stability_study(const ExperimentData& data, const elm::TrainConfig& config,
                                std::size_t trials, std::uint64_t base_seed, unsigned threads) {
  if (trials < 2) throw Error(ErrorCode::InvalidArgument, "stability study needs >= 2 trials");
  const auto cfg = with_classes(config, data);
  std::vector<double> logistic(trials), random(trials);
  parallel_for(trials, threads, [&](std::size_t t) {
    const auto model = elm::train(data.train, data.train_labels, cfg);
    logistic[t] = elm::accuracy(elm::predict(model, data.test), data.test_labels);
    const auto baseline =
        elm::train_random_baseline(data.train, data.train_labels, cfg, base_seed + t);
    random[t] = elm::accuracy(elm::predict(baseline, data.test), data.test_labels);
  });
  StabilityReport report;
  report.trials = trials;
  report.base_seed = base_seed;
  report.logistic = summarize(std::move(logistic));
  report.random_baseline = summarize(std::move(random));
  return report;
}

LatencyReport bench_inference(const elm::TrainedModel& model,
                              std::span<const features::SignalWindow> windows,
                              std::size_t repetitions, unsigned threads) {
  if (repetitions < 1) throw Error(ErrorCode::InvalidArgument, "repetitions must be >= 1");
  if (windows.empty()) throw Error(ErrorCode::InvalidArgument, "no windows to benchmark");

  constexpr std::size_t kStages = 4;
  std::vector<std::array<double, kStages>> stage_times;
  std::vector<double> totals;
  volatile int sink = 0;
  for (std::size_t rep = 0; rep <= repetitions; ++rep) {
    std::array<double, kStages> t{};
    const auto start = Clock::now();

    auto t0 = Clock::now();
    const auto f =
        features::extract_matrix(windows, model.feature_ids, model.feature_mode, threads);
    t[0] = seconds_since(t0);

    t0 = Clock::now();
    const Matrix inputs =
        model.normalization ? features::normalize_apply(f.values, *model.normalization) : f.values;
    const Matrix h = elm::hidden_matrix(inputs, model.input_weights.values(), model.activation);
    t[1] = seconds_since(t0);

    t0 = Clock::now();
    const Matrix scores = h * model.output_weights;
    t[2] = seconds_since(t0);

    t0 = Clock::now();
    const auto labels = elm::argmax_rows(scores);
    t[3] = seconds_since(t0);

    const double total = seconds_since(start);
    sink = sink + labels.front();
    if (rep == 0) continue;  // warm-up
    stage_times.push_back(t);
    totals.push_back(total);
  }

  static constexpr std::array<const char*, kStages> kNames = {"feature_extraction",
                                                               "hidden_matrix", "output_product",
                                                               "argmax"};
  LatencyReport report;
  report.samples = windows.size();
  report.repetitions = repetitions;
  const auto n = static_cast<double>(repetitions);
  for (std::size_t s = 0; s < kStages; ++s) {
    StageTiming st{kNames[s], 0.0, std::numeric_limits<double>::infinity()};
    for (const auto& t : stage_times) {
      st.mean += t[s] / n;
      st.min = std::min(st.min, t[s]);
    }
    report.stages.push_back(st);
  }
  report.total = {"total", 0.0, std::numeric_limits<double>::infinity()};
  for (double t : totals) {
    report.total.mean += t / n;
    report.total.min = std::min(report.total.min, t);
  }
  return report;
}

PipelineResult run_pipeline(const dataio::SplitDataset& data, const PipelineConfig& config) {
  if (data.train.empty() || data.verify.empty() || data.test.empty()) {
    throw Error(ErrorCode::InvalidArgument, "pipeline needs non-empty train, verify and test");
  }
  elm::TrainConfig train_cfg = config.train;
  if (train_cfg.class_count <= 0) train_cfg.class_count = data.class_count;

  std::optional<sfs::SfsTrace> trace;
  std::vector<FeatureId> subset = config.features;
  if (subset.empty()) {
    sfs::SfsConfig sfs_cfg;
    sfs_cfg.train = train_cfg;
    sfs_cfg.mode = config.mode;
    sfs_cfg.threads = config.threads;
    trace = sfs::sfs_select(data.train, data.verify, sfs_cfg);
    subset = trace->final_subset;
    if (subset.empty()) {
      throw Error(ErrorCode::FeatureUndefined, "SFS found no computable feature");
    }
  }
  const auto prepared = prepare_features(data, subset, config.mode, config.threads);
  auto model = elm::train(prepared.train, prepared.train_labels, train_cfg, config.mode);
  const double verify =
      elm::accuracy(elm::predict(model, prepared.verify), prepared.verify_labels);
  const double test = elm::accuracy(elm::predict(model, prepared.test), prepared.test_labels);
  return PipelineResult{std::move(trace), std::move(model), verify, test};
}

MultiConditionReport multi_condition_eval(
    std::span<const std::pair<std::string, dataio::SplitDataset>> datasets,
    const PipelineConfig& config) {
  if (datasets.empty()) throw Error(ErrorCode::InvalidArgument, "no conditions to evaluate");
  MultiConditionReport report;
  for (const auto& [name, data] : datasets) {
    const auto r = run_pipeline(data, config);
    report.conditions.push_back({name, r.model.feature_ids, r.verify_accuracy, r.test_accuracy});
    report.average_test_accuracy += r.test_accuracy;
  }
  report.average_test_accuracy /= static_cast<double>(report.conditions.size());
  return report;
}

MultiConditionReport multi_condition_eval(std::span<const std::filesystem::path> manifests,
                                          const PipelineConfig& config) {
  std::vector<std::pair<std::string, dataio::SplitDataset>> datasets;
  for (const auto& path : manifests) {
    datasets.emplace_back(path.string(), dataio::load_dataset(dataio::load_manifest(path)));
  }
  return multi_condition_eval(datasets, config);
}

}  // namespace lelm::eval
