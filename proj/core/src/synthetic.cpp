#include "lelm/synthetic.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "lelm/error.hpp"
#include "lelm/random.hpp"

namespace lelm::synthetic {

namespace fs = std::filesystem;

const std::vector<ClassProfile>& bearing_profiles() {
  // Periods: inner race ~74, outer race ~107-112, ball ~85-170 samples.
  static const std::vector<ClassProfile> profiles = {
      {"N", 0.13, 0.0, 0.0, true, 0.25, 10.0, 0.0},
      {"IF_0.007", 0.16, 0.9, 74.0, true, 0.25, 10.0, 0.5},
      {"IF_0.021", 0.24, 2.2, 74.0, true, 0.22, 8.0, 0.5},
      {"BF_0.007", 0.20, 0.35, 170.0, false, 0.30, 12.0, 0.0},
      {"BF_0.021", 0.24, 0.5, 85.0, false, 0.28, 10.0, 0.0},
      {"OF3_0.007", 0.20, 1.5, 112.0, true, 0.20, 15.0, 0.0},
      {"OF3_0.021", 0.30, 2.8, 112.0, true, 0.20, 15.0, 0.0},
      {"OF6_0.007", 0.20, 3.2, 107.0, true, 0.18, 12.0, 0.0},
      {"OF6_0.021", 0.24, 1.1, 107.0, true, 0.18, 12.0, 0.0},
      {"OF12_0.007", 0.16, 0.6, 112.0, true, 0.22, 20.0, 0.0},
      {"OF12_0.021", 0.20, 1.9, 112.0, true, 0.22, 25.0, 0.0},
  };
  return profiles;
}

namespace {

std::vector<double> generate_one(const ClassProfile& p, std::size_t length, double noise_scale,
                                 double revolution, Rng& rng) {
  std::vector<double> x(length);
  for (auto& v : x) v = noise_scale * p.noise_sd * rng.normal();
  if (p.impact_amplitude <= 0.0 || p.impact_period <= 0.0) return x;

  const auto ring = static_cast<std::size_t>(std::ceil(6.0 * p.decay));
  double t0 = rng.uniform01() * p.impact_period;
  while (t0 < static_cast<double>(length)) {
    const double load = 1.0 + p.modulation * std::cos(2.0 * std::numbers::pi * t0 / revolution);
    const double amp = p.impact_amplitude * load * (1.0 + 0.15 * rng.normal());
    const auto start = static_cast<std::size_t>(t0);
    for (std::size_t k = 0; k < ring && start + k < length; ++k) {
      const double dt = static_cast<double>(start + k) - t0;
      x[start + k] += amp * std::exp(-dt / p.decay) *
                      std::sin(2.0 * std::numbers::pi * p.resonance * dt);
    }
    if (p.periodic) {
      t0 += p.impact_period * (1.0 + 0.01 * rng.normal());
    } else {
      double u;
      do {
        u = rng.uniform01();
      } while (u <= 0.0);
      t0 += -p.impact_period * std::log(u);
    }
  }
  return x;
}

}  // namespace

std::vector<std::vector<double>> generate_signals(const SyntheticOptions& options,
                                                  const std::vector<ClassProfile>& profiles) {
  if (options.windows_per_class < 3 || options.window_len < 2) {
    throw Error(ErrorCode::InvalidArgument,
                "synthetic data needs >= 3 windows per class and window_len >= 2");
  }
  const std::size_t length = options.windows_per_class * options.window_len;
  std::vector<std::vector<double>> out;
  out.reserve(profiles.size());
  for (std::size_t c = 0; c < profiles.size(); ++c) {
    Rng rng(options.seed * 1000003ULL + c + 1);
    out.push_back(generate_one(profiles[c], length, options.noise_scale, options.revolution, rng));
  }
  return out;
}

dataio::SplitDataset generate_dataset(const SyntheticOptions& options,
                                      const dataio::SplitRatios& ratios) {
  const auto& profiles = bearing_profiles();
  const auto signals = generate_signals(options, profiles);
  dataio::WindowsByClass by_class;
  std::map<int, std::string> names;
  for (std::size_t c = 0; c < signals.size(); ++c) {
    const int label = static_cast<int>(c) + 1;
    by_class[label] = dataio::window_signal(signals[c], options.window_len, options.window_len);
    names[label] = profiles[c].name;
  }
  auto ds = dataio::split(by_class, ratios, options.seed);
  ds.class_names = std::move(names);
  return ds;
}

fs::path write_dataset(const fs::path& dir, const SyntheticOptions& options,
                       const dataio::SplitRatios& ratios) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + dir.string() + ": " + ec.message());
  const auto& profiles = bearing_profiles();
  const auto signals = generate_signals(options, profiles);
  dataio::DatasetManifest manifest;
  manifest.window_len = options.window_len;
  manifest.stride = options.window_len;
  manifest.split = ratios;
  manifest.seed = options.seed;
  for (std::size_t c = 0; c < signals.size(); ++c) {
    char file[32];
    std::snprintf(file, sizeof file, "class_%02zu.txt", c + 1);
    dataio::write_signal(dir / file, signals[c]);
    manifest.entries.push_back({dir / file, static_cast<int>(c) + 1, profiles[c].name});
  }
  const auto manifest_path = dir / "manifest.json";
  std::ofstream out(manifest_path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + manifest_path.string());
  out << dataio::manifest_to_json(manifest, dir);
  return manifest_path;
}

}  // namespace lelm::synthetic
