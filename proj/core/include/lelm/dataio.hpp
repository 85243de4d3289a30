#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "lelm/features.hpp"

namespace lelm::dataio {

/// Reads one decimal real per line (LF or CRLF). A non-numeric first line
/// is taken as a CSV header and skipped; blank lines are ignored.
/// Throws IoError, or ParseError naming the 1-based line number.
std::vector<double> load_signal(const std::filesystem::path& path);
std::vector<double> parse_signal(std::string_view text);

/// Writes one value per line using shortest round-trip formatting.
void write_signal(const std::filesystem::path& path, std::span<const double> signal);

/// Windows start at 0, stride, 2*stride, ...; a trailing partial window is
/// dropped. Throws SignalTooShort when signal.size() < window_len.
std::vector<std::vector<double>> window_signal(std::span<const double> signal,
                                               std::size_t window_len, std::size_t stride);

struct SplitRatios {
  double train = 4.0 / 6.0;
  double verify = 1.0 / 6.0;
  double test = 1.0 / 6.0;
};

void validate(const SplitRatios& ratios);

struct SplitCounts {
  std::size_t train = 0;
  std::size_t verify = 0;
  std::size_t test = 0;
};

/// verify = floor(n * r_verify), test = floor(n * r_test), rest to train.
SplitCounts split_counts(std::size_t n, const SplitRatios& ratios);

struct ManifestEntry {
  std::filesystem::path path;  // resolved against the manifest's directory
  int label = 0;
  std::string class_name;
};

struct DatasetManifest {
  std::vector<ManifestEntry> entries;
  std::size_t window_len = 2048;
  std::size_t stride = 2048;
  SplitRatios split{};
  std::uint64_t seed = 0;
  bool shuffle = false;
};

void validate(const DatasetManifest& manifest);

/// Relative entry paths are resolved against `base_dir`.
DatasetManifest manifest_from_json(const std::string& text, const std::filesystem::path& base_dir);
DatasetManifest load_manifest(const std::filesystem::path& path);
/// Entry paths are written relative to `base_dir` when possible.
std::string manifest_to_json(const DatasetManifest& manifest,
                             const std::filesystem::path& base_dir);

struct SplitDataset {
  std::vector<features::SignalWindow> train;
  std::vector<features::SignalWindow> verify;
  std::vector<features::SignalWindow> test;
  int class_count = 0;
  std::map<int, std::string> class_names;
};

using WindowsByClass = std::map<int, std::vector<std::vector<double>>>;

/// Per-class partition. Default is contiguous in time: the first windows go
/// to train, the next to verify, the rest to test. With `shuffle` each
/// class is permuted by a seeded Fisher-Yates pass first.
SplitDataset split(const WindowsByClass& windows, const SplitRatios& ratios, std::uint64_t seed,
                   bool shuffle = false);

/// Loads every entry, windows it, and splits. Entries sharing a label are
/// concatenated in manifest order.
SplitDataset load_dataset(const DatasetManifest& manifest);

std::vector<int> labels_of(std::span<const features::SignalWindow> windows);

}  // namespace lelm::dataio
