#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "lelm/dataio.hpp"

namespace lelm::synthetic {

/// Shape of one synthetic fault class. Impacts are exponentially decaying
/// sinusoidal bursts added to Gaussian background noise.
struct ClassProfile {
  std::string name;
  double noise_sd = 0.1;
  double impact_amplitude = 0.0;  // 0 disables impacts
  double impact_period = 0.0;     // mean samples between impacts
  bool periodic = true;           // false: exponential inter-arrival times
  double resonance = 0.25;        // cycles per sample
  double decay = 10.0;            // samples
  double modulation = 0.0;        // depth of once-per-revolution amplitude modulation
};

/// Eleven classes mirroring a normal bearing plus inner-race, ball and
/// outer-race (3, 6, 12 o'clock) faults at two severities.
const std::vector<ClassProfile>& bearing_profiles();

struct SyntheticOptions {
  std::size_t windows_per_class = 60;
  std::size_t window_len = 2048;
  std::uint64_t seed = 20240601;
  /// Multiplies every class's background noise.
  double noise_scale = 1.0;
  /// Samples per shaft revolution (1797 rpm at 12 kHz).
  double revolution = 400.7;
};

/// One continuous signal per profile, windows_per_class * window_len long.
/// Class c is generated from its own stream seeded by (seed, c).
std::vector<std::vector<double>> generate_signals(const SyntheticOptions& options,
                                                  const std::vector<ClassProfile>& profiles =
                                                      bearing_profiles());

/// In-memory dataset split with the given ratios (contiguous per class).
dataio::SplitDataset generate_dataset(const SyntheticOptions& options,
                                      const dataio::SplitRatios& ratios = {});

/// Writes class_XX.txt signal files and manifest.json into `dir`; returns
/// the manifest path.
std::filesystem::path write_dataset(const std::filesystem::path& dir,
                                    const SyntheticOptions& options,
                                    const dataio::SplitRatios& ratios = {});

}  // namespace lelm::synthetic
