#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lelm/linalg.hpp"

namespace lelm::features {

/// The fourteen time-domain features. Numeric values are part of the file
/// formats (models, manifests, SFS traces) and must never be renumbered.
enum class FeatureId : int {
  Mean = 1,
  StdDev = 2,
  Variance = 3,
  PeakToPeak = 4,
  SquareRootAmplitude = 5,
  AverageAmplitude = 6,
  MeanSquareAmplitude = 7,  // RMS
  PeakValue = 8,
  WaveformIndex = 9,
  PeakIndex = 10,
  ImpulsionIndex = 11,
  ClearanceFactor = 12,
  Skewness = 13,
  Kurtosis = 14,
};

inline constexpr int kFeatureCount = 14;

/// All ids in ascending order.
const std::array<FeatureId, kFeatureCount>& all_features();

/// Snake-case canonical name, e.g. "mean_square_amplitude".
std::string_view name(FeatureId id);
/// Accepts "1".."14" or a canonical name. Throws InvalidArgument.
FeatureId parse_feature(std::string_view text);
FeatureId from_int(int id);
inline int to_int(FeatureId id) { return static_cast<int>(id); }

/// How the impulsion index and clearance factor are normalised. `Rectified`
/// divides by the average amplitude (mean of |x|); `SignedMean` divides by the
/// plain signed mean.
enum class FeatureMode { Rectified, SignedMean };

std::string_view name(FeatureMode mode);
FeatureMode parse_feature_mode(std::string_view text);

/// A fixed-length run of raw vibration samples. Label 0 means unlabeled;
/// labeled windows carry a class index in 1..m.
struct SignalWindow {
  std::vector<double> samples;
  int label = 0;
};

/// N x K feature values; column j holds feature `ids[j]`, row i window i.
struct FeatureMatrix {
  Matrix values;
  std::vector<FeatureId> ids;

  std::size_t rows() const { return static_cast<std::size_t>(values.rows()); }
  std::size_t cols() const { return ids.size(); }

  /// Columns for `subset`, in the order given. Every id must be present.
  FeatureMatrix select(std::span<const FeatureId> subset) const;
};

double extract_feature(std::span<const double> samples, FeatureId id,
                       FeatureMode mode = FeatureMode::Rectified);
inline double extract_feature(const SignalWindow& window, FeatureId id,
                              FeatureMode mode = FeatureMode::Rectified) {
  return extract_feature(window.samples, id, mode);
}

/// Like extract_feature but returns nullopt where the formula's denominator
/// is zero instead of throwing FeatureUndefined.
std::optional<double> try_extract_feature(std::span<const double> samples, FeatureId id,
                                          FeatureMode mode = FeatureMode::Rectified);

/// Row i, column j equals extract_feature(windows[i], ids[j]). Rows may be
/// computed on `threads` workers; output order always follows the input.
FeatureMatrix extract_matrix(std::span<const SignalWindow> windows, std::span<const FeatureId> ids,
                             FeatureMode mode = FeatureMode::Rectified, unsigned threads = 1);

struct NormalizationStats {
  std::vector<double> means;
  std::vector<double> stds;  // population convention; 0 marks a constant column

  friend bool operator==(const NormalizationStats&, const NormalizationStats&) = default;
};

NormalizationStats normalize_fit(const Matrix& values);
/// (x - mean) / std per column; zero-std columns are only shifted.
Matrix normalize_apply(const Matrix& values, const NormalizationStats& stats);

inline NormalizationStats normalize_fit(const FeatureMatrix& f) { return normalize_fit(f.values); }
inline FeatureMatrix normalize_apply(const FeatureMatrix& f, const NormalizationStats& stats) {
  return {normalize_apply(f.values, stats), f.ids};
}

}  // namespace lelm::features
