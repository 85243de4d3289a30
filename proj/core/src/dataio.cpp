#include "lelm/dataio.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lelm/error.hpp"
#include "lelm/random.hpp"

namespace lelm::dataio {

namespace fs = std::filesystem;

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

bool parse_real(std::string_view s, double& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

}  // namespace

std::vector<double> parse_signal(std::string_view text) {
  std::vector<double> out;
  std::size_t line_no = 0;
  bool seen_content = false;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = text.find('\n', pos);
    const auto line = trim(text.substr(pos, end == std::string_view::npos ? end : end - pos));
    ++line_no;
    pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
    if (line.empty()) continue;
    double v = 0;
    if (parse_real(line, v)) {
      out.push_back(v);
    } else if (!seen_content) {
      // header row of a one-column CSV
    } else {
      throw Error(ErrorCode::ParseError,
                  "line " + std::to_string(line_no) + ": not a finite real: '" +
                      std::string(line.substr(0, 40)) + "'");
    }
    seen_content = true;
  }
  if (out.empty()) throw Error(ErrorCode::ParseError, "signal is empty");
  return out;
}

std::vector<double> load_signal(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open signal file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_signal(buf.str());
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

void write_signal(const fs::path& path, std::span<const double> signal) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write signal file " + path.string());
  std::string text;
  text.reserve(signal.size() * 24);
  char buf[32];
  for (double v : signal) {
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    text.append(buf, ptr);
    text.push_back('\n');
  }
  out << text;
  if (!out) throw Error(ErrorCode::IoError, "failed writing " + path.string());
}

std::vector<std::vector<double>> window_signal(std::span<const double> signal,
                                               std::size_t window_len, std::size_t stride) {
  if (window_len < 2 || stride < 1) {
    throw Error(ErrorCode::InvalidArgument, "window_len must be >= 2 and stride >= 1");
  }
  if (signal.size() < window_len) {
    throw Error(ErrorCode::SignalTooShort,
                "signal has " + std::to_string(signal.size()) + " samples, window needs " +
                    std::to_string(window_len));
  }
  const std::size_t count = (signal.size() - window_len) / stride + 1;
  std::vector<std::vector<double>> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const auto first = signal.begin() + static_cast<std::ptrdiff_t>(k * stride);
    out.emplace_back(first, first + static_cast<std::ptrdiff_t>(window_len));
  }
  return out;
}

void validate(const SplitRatios& r) {
  if (!(r.train > 0 && r.verify > 0 && r.test > 0)) {
    throw Error(ErrorCode::InvalidArgument, "split ratios must all be positive");
  }
  if (std::abs(r.train + r.verify + r.test - 1.0) > 1e-9) {
    throw Error(ErrorCode::InvalidArgument, "split ratios must sum to 1");
  }
}

SplitCounts split_counts(std::size_t n, const SplitRatios& ratios) {
  validate(ratios);
  // The slack absorbs representation error in ratios such as 1/6.
  auto share = [n](double r) {
    return static_cast<std::size_t>(std::floor(static_cast<double>(n) * r + 1e-9));
  };
  SplitCounts c;
  c.verify = share(ratios.verify);
  c.test = share(ratios.test);
  c.train = n - c.verify - c.test;
  return c;
}

void validate(const DatasetManifest& m) {
  if (m.entries.empty()) throw Error(ErrorCode::InvalidArgument, "manifest has no entries");
  if (m.window_len < 2) throw Error(ErrorCode::InvalidArgument, "window_len must be >= 2");
  if (m.stride < 1) throw Error(ErrorCode::InvalidArgument, "stride must be >= 1");
  validate(m.split);
  for (const auto& e : m.entries) {
    if (e.label < 1) {
      throw Error(ErrorCode::LabelOutOfRange,
                  "manifest label must be >= 1 for " + e.path.string());
    }
  }
}

DatasetManifest manifest_from_json(const std::string& text, const fs::path& base_dir) {
  using nlohmann::json;
  DatasetManifest m;
  try {
    const json doc = json::parse(text);
    for (const auto& e : doc.at("entries")) {
      ManifestEntry entry;
      fs::path p = e.at("path").get<std::string>();
      entry.path = p.is_absolute() ? p : base_dir / p;
      entry.label = e.at("label").get<int>();
      entry.class_name = e.value("class_name", std::string("class_") + std::to_string(entry.label));
      m.entries.push_back(std::move(entry));
    }
    m.window_len = doc.value("window_len", m.window_len);
    m.stride = doc.value("stride", m.window_len);
    if (doc.contains("split")) {
      const auto& s = doc["split"];
      if (!s.is_array() || s.size() != 3) {
        throw Error(ErrorCode::ParseError, "manifest 'split' must hold three ratios");
      }
      m.split = {s[0].get<double>(), s[1].get<double>(), s[2].get<double>()};
    }
    m.seed = doc.value("seed", m.seed);
    m.shuffle = doc.value("shuffle", m.shuffle);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed manifest: ") + e.what());
  }
  validate(m);
  return m;
}

DatasetManifest load_manifest(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open manifest " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return manifest_from_json(buf.str(), path.parent_path());
}

std::string manifest_to_json(const DatasetManifest& m, const fs::path& base_dir) {
  using nlohmann::json;
  json entries = json::array();
  for (const auto& e : m.entries) {
    fs::path p = e.path;
    if (!base_dir.empty()) {
      const auto rel = e.path.lexically_relative(base_dir);
      if (!rel.empty() && *rel.begin() != "..") p = rel;
    }
    entries.push_back(
        {{"path", p.generic_string()}, {"label", e.label}, {"class_name", e.class_name}});
  }
  json doc = {{"entries", std::move(entries)},
              {"window_len", m.window_len},
              {"stride", m.stride},
              {"split", {m.split.train, m.split.verify, m.split.test}},
              {"seed", m.seed},
              {"shuffle", m.shuffle}};
  return doc.dump(2) + "\n";
}

SplitDataset split(const WindowsByClass& windows, const SplitRatios& ratios, std::uint64_t seed,
                   bool shuffle) {
  validate(ratios);
  SplitDataset out;
  for (const auto& [label, wins] : windows) {
    if (wins.size() < 3) {
      throw Error(ErrorCode::TooFewWindows,
                  "class " + std::to_string(label) + " has " + std::to_string(wins.size()) +
                      " windows, needs >= 3");
    }
    std::vector<std::size_t> order(wins.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    if (shuffle) {
      Rng rng(seed ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(label)));
      for (std::size_t i = order.size() - 1; i > 0; --i) {
        std::swap(order[i], order[rng.below(i + 1)]);
      }
    }
    const auto counts = split_counts(wins.size(), ratios);
    for (std::size_t k = 0; k < order.size(); ++k) {
      features::SignalWindow w{wins[order[k]], label};
      if (k < counts.train) {
        out.train.push_back(std::move(w));
      } else if (k < counts.train + counts.verify) {
        out.verify.push_back(std::move(w));
      } else {
        out.test.push_back(std::move(w));
      }
    }
    out.class_count = std::max(out.class_count, label);
  }
  return out;
}

SplitDataset load_dataset(const DatasetManifest& manifest) {
  validate(manifest);
  WindowsByClass by_class;
  std::map<int, std::string> names;
  for (const auto& e : manifest.entries) {
    const auto signal = load_signal(e.path);
    auto wins = window_signal(signal, manifest.window_len, manifest.stride);
    auto& dst = by_class[e.label];
    for (auto& w : wins) dst.push_back(std::move(w));
    names.emplace(e.label, e.class_name);
  }
  auto out = split(by_class, manifest.split, manifest.seed, manifest.shuffle);
  out.class_names = std::move(names);
  return out;
}

std::vector<int> labels_of(std::span<const features::SignalWindow> windows) {
  std::vector<int> out;
  out.reserve(windows.size());
  for (const auto& w : windows) out.push_back(w.label);
  return out;
}

}  // namespace lelm::dataio
