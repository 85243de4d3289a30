#include "lelm/features.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>

#include "lelm/error.hpp"
#include "lelm/parallel.hpp"

namespace lelm::features {

namespace {

constexpr std::array<std::string_view, kFeatureCount> kNames = {
    "mean",
    "std_dev",
    "variance",
    "peak_to_peak",
    "square_root_amplitude",
    "average_amplitude",
    "mean_square_amplitude",
    "peak_value",
    "waveform_index",
    "peak_index",
    "impulsion_index",
    "clearance_factor",
    "skewness",
    "kurtosis",
};

bool needs_centered_moments(FeatureId id) {
  return id == FeatureId::StdDev || id == FeatureId::Variance || id == FeatureId::Skewness ||
         id == FeatureId::Kurtosis;
}

// Raw sums from one pass, plus the centred sums from a second pass when any
// requested feature needs them. Every feature is a closed form of these.
struct Moments {
  double n = 0;
  double mean = 0;
  double abs_mean = 0;
  double sqrt_abs_mean = 0;
  double mean_sq = 0;
  double max = 0;
  double min = 0;
  double abs_max = 0;
  double var = 0;
  double abs_dev3 = 0;  // (1/n) sum (|x| - mean)^3
  double abs_dev4 = 0;  // (1/n) sum (|x| - mean)^4
};

void check_window(std::span<const double> x) {
  if (x.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "signal window needs at least 2 samples");
  }
}

Moments compute_moments(std::span<const double> x, bool centered) {
  check_window(x);
  Moments m;
  m.n = static_cast<double>(x.size());
  double sum = 0, sum_abs = 0, sum_sqrt_abs = 0, sum_sq = 0;
  m.max = x[0];
  m.min = x[0];
  m.abs_max = std::abs(x[0]);
  for (double v : x) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::InvalidArgument, "signal window contains a non-finite sample");
    }
    const double a = std::abs(v);
    sum += v;
    sum_abs += a;
    sum_sqrt_abs += std::sqrt(a);
    sum_sq += v * v;
    m.max = std::max(m.max, v);
    m.min = std::min(m.min, v);
    m.abs_max = std::max(m.abs_max, a);
  }
  m.mean = sum / m.n;
  m.abs_mean = sum_abs / m.n;
  m.sqrt_abs_mean = sum_sqrt_abs / m.n;
  m.mean_sq = sum_sq / m.n;
  if (centered) {
    double s2 = 0, s3 = 0, s4 = 0;
    for (double v : x) {
      const double d = v - m.mean;
      s2 += d * d;
      const double e = std::abs(v) - m.mean;
      const double e2 = e * e;
      s3 += e2 * e;
      s4 += e2 * e2;
    }
    m.var = s2 / m.n;
    m.abs_dev3 = s3 / m.n;
    m.abs_dev4 = s4 / m.n;
  }
  return m;
}

std::optional<double> ratio(double num, double den) {
  if (den == 0.0) return std::nullopt;
  return num / den;
}

std::optional<double> from_moments(const Moments& m, FeatureId id, FeatureMode mode) {
  const double rms = std::sqrt(m.mean_sq);
  const double mean_den = mode == FeatureMode::Rectified ? m.abs_mean : m.mean;
  switch (id) {
    case FeatureId::Mean: return m.mean;
    case FeatureId::StdDev: return std::sqrt(m.var);
    case FeatureId::Variance: return m.var;
    case FeatureId::PeakToPeak: return m.max - m.min;
    case FeatureId::SquareRootAmplitude: return m.sqrt_abs_mean * m.sqrt_abs_mean;
    case FeatureId::AverageAmplitude: return m.abs_mean;
    case FeatureId::MeanSquareAmplitude: return rms;
    case FeatureId::PeakValue: return m.abs_max;
    case FeatureId::WaveformIndex: return ratio(rms, m.abs_mean);
    case FeatureId::PeakIndex: return ratio(m.abs_max, rms);
    case FeatureId::ImpulsionIndex: return ratio(m.abs_max, mean_den);
    case FeatureId::ClearanceFactor: return ratio(rms, mean_den);
    case FeatureId::Skewness: {
      const double sd = std::sqrt(m.var);
      return ratio(m.abs_dev3, sd * sd * sd);
    }
    case FeatureId::Kurtosis: return ratio(m.abs_dev4, m.var * m.var);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown feature id");
}

Error undefined_error(FeatureId id, std::optional<std::size_t> window) {
  std::string msg = "feature " + std::to_string(to_int(id)) + " (" + std::string(name(id)) +
                    ") has a zero denominator";
  if (window) msg += " on window " + std::to_string(*window);
  return Error(ErrorCode::FeatureUndefined, msg);
}

}  // namespace

const std::array<FeatureId, kFeatureCount>& all_features() {
  static const std::array<FeatureId, kFeatureCount> ids = [] {
    std::array<FeatureId, kFeatureCount> out{};
    for (int i = 0; i < kFeatureCount; ++i) out[i] = static_cast<FeatureId>(i + 1);
    return out;
  }();
  return ids;
}

std::string_view name(FeatureId id) {
  const int i = to_int(id);
  if (i < 1 || i > kFeatureCount) {
    throw Error(ErrorCode::InvalidArgument, "feature id out of range: " + std::to_string(i));
  }
  return kNames[i - 1];
}

FeatureId from_int(int id) {
  if (id < 1 || id > kFeatureCount) {
    throw Error(ErrorCode::InvalidArgument,
                "feature id must be in 1..14, got " + std::to_string(id));
  }
  return static_cast<FeatureId>(id);
}

FeatureId parse_feature(std::string_view text) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec == std::errc() && ptr == text.data() + text.size()) return from_int(value);
  for (int i = 0; i < kFeatureCount; ++i) {
    if (kNames[i] == text) return static_cast<FeatureId>(i + 1);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown feature '" + std::string(text) + "'");
}

std::string_view name(FeatureMode mode) {
  return mode == FeatureMode::Rectified ? "rectified" : "signed_mean";
}

FeatureMode parse_feature_mode(std::string_view text) {
  if (text == "rectified") return FeatureMode::Rectified;
  if (text == "signed_mean") return FeatureMode::SignedMean;
  throw Error(ErrorCode::InvalidArgument, "unknown feature mode '" + std::string(text) + "'");
}

FeatureMatrix FeatureMatrix::select(std::span<const FeatureId> subset) const {
  FeatureMatrix out;
  out.ids.assign(subset.begin(), subset.end());
  out.values.resize(values.rows(), static_cast<Eigen::Index>(subset.size()));
  for (std::size_t j = 0; j < subset.size(); ++j) {
    const auto it = std::find(ids.begin(), ids.end(), subset[j]);
    if (it == ids.end()) {
      throw Error(ErrorCode::FeatureSetMismatch,
                  "feature " + std::to_string(to_int(subset[j])) + " is not in the matrix");
    }
    out.values.col(static_cast<Eigen::Index>(j)) = values.col(it - ids.begin());
  }
  return out;
}

std::optional<double> try_extract_feature(std::span<const double> samples, FeatureId id,
                                          FeatureMode mode) {
  from_int(to_int(id));
  return from_moments(compute_moments(samples, needs_centered_moments(id)), id, mode);
}

double extract_feature(std::span<const double> samples, FeatureId id, FeatureMode mode) {
  const auto v = try_extract_feature(samples, id, mode);
  if (!v) throw undefined_error(id, std::nullopt);
  return *v;
}

FeatureMatrix extract_matrix(std::span<const SignalWindow> windows, std::span<const FeatureId> ids,
                             FeatureMode mode, unsigned threads) {
  if (ids.empty()) {
    throw Error(ErrorCode::InvalidArgument, "feature list is empty");
  }
  bool centered = false;
  for (std::size_t j = 0; j < ids.size(); ++j) {
    from_int(to_int(ids[j]));
    centered = centered || needs_centered_moments(ids[j]);
    for (std::size_t k = 0; k < j; ++k) {
      if (ids[k] == ids[j]) {
        throw Error(ErrorCode::DuplicateFeature,
                    "feature " + std::to_string(to_int(ids[j])) + " listed twice");
      }
    }
  }
  if (!windows.empty()) {
    const std::size_t len = windows.front().samples.size();
    for (std::size_t i = 1; i < windows.size(); ++i) {
      if (windows[i].samples.size() != len) {
        throw Error(ErrorCode::LengthMismatch,
                    "window " + std::to_string(i) + " has " +
                        std::to_string(windows[i].samples.size()) + " samples, expected " +
                        std::to_string(len));
      }
    }
  }

  FeatureMatrix out;
  out.ids.assign(ids.begin(), ids.end());
  out.values.resize(static_cast<Eigen::Index>(windows.size()),
                    static_cast<Eigen::Index>(ids.size()));
  parallel_for(windows.size(), threads, [&](std::size_t i) {
    const Moments m = compute_moments(windows[i].samples, centered);
    for (std::size_t j = 0; j < ids.size(); ++j) {
      const auto v = from_moments(m, ids[j], mode);
      if (!v) throw undefined_error(ids[j], i);
      out.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = *v;
    }
  });
  return out;
}

NormalizationStats normalize_fit(const Matrix& values) {
  if (values.rows() == 0 || values.cols() == 0) {
    throw Error(ErrorCode::InvalidArgument, "cannot fit normalization on an empty matrix");
  }
  NormalizationStats stats;
  const auto n = static_cast<double>(values.rows());
  for (Eigen::Index j = 0; j < values.cols(); ++j) {
    double sum = 0;
    for (Eigen::Index i = 0; i < values.rows(); ++i) sum += values(i, j);
    const double mean = sum / n;
    double ss = 0;
    for (Eigen::Index i = 0; i < values.rows(); ++i) {
      const double d = values(i, j) - mean;
      ss += d * d;
    }
    stats.means.push_back(mean);
    stats.stds.push_back(std::sqrt(ss / n));
  }
  return stats;
}

Matrix normalize_apply(const Matrix& values, const NormalizationStats& stats) {
  if (stats.means.size() != static_cast<std::size_t>(values.cols()) ||
      stats.stds.size() != stats.means.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "normalization has " + std::to_string(stats.means.size()) +
                    " columns, matrix has " + std::to_string(values.cols()));
  }
  Matrix out(values.rows(), values.cols());
  for (Eigen::Index j = 0; j < values.cols(); ++j) {
    const double mean = stats.means[static_cast<std::size_t>(j)];
    const double sd = stats.stds[static_cast<std::size_t>(j)];
    const double scale = sd > 0.0 ? sd : 1.0;
    for (Eigen::Index i = 0; i < values.rows(); ++i) {
      out(i, j) = (values(i, j) - mean) / scale;
    }
  }
  return out;
}

}  // namespace lelm::features
