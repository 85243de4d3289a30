#include "lelm_cli/options.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "lelm/error.hpp"

namespace lelm::cli {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (true) {
    const auto next = text.find(sep, pos);
    parts.push_back(text.substr(pos, next == std::string_view::npos ? next : next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return parts;
}

Error bad(std::string_view what, std::string_view text) {
  return Error(ErrorCode::InvalidArgument,
               "invalid " + std::string(what) + " '" + std::string(text) + "'");
}

template <typename T>
T number(std::string_view s, std::string_view what) {
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw bad(what, s);
  return v;
}

// Rounds away accumulated binary error so 0.1 + 2 * 0.1 is stored as 0.3.
double tidy(double v) { return std::round(v * 1e12) / 1e12; }

}  // namespace

std::vector<features::FeatureId> parse_feature_list(std::string_view text) {
  if (text == "sfs") return {};
  if (text == "all") {
    const auto& all = features::all_features();
    return {all.begin(), all.end()};
  }
  std::vector<features::FeatureId> ids;
  for (auto part : split(text, ',')) {
    const auto id = features::parse_feature(part);
    for (auto seen : ids) {
      if (seen == id) {
        throw Error(ErrorCode::DuplicateFeature, "feature listed twice: " + std::string(part));
      }
    }
    ids.push_back(id);
  }
  return ids;
}

std::vector<std::size_t> parse_count_range(std::string_view text) {
  std::vector<std::size_t> out;
  if (text.find(':') != std::string_view::npos) {
    const auto parts = split(text, ':');
    if (parts.size() < 2 || parts.size() > 3) throw bad("range", text);
    const auto lo = number<std::size_t>(parts[0], "range");
    const auto hi = number<std::size_t>(parts[1], "range");
    const auto step = parts.size() == 3 ? number<std::size_t>(parts[2], "range") : 1;
    if (step == 0 || hi < lo) throw bad("range", text);
    for (std::size_t v = lo; v <= hi; v += step) out.push_back(v);
  } else {
    for (auto part : split(text, ',')) out.push_back(number<std::size_t>(part, "count"));
  }
  return out;
}

std::vector<double> parse_real_range(std::string_view text) {
  std::vector<double> out;
  if (text.find(':') != std::string_view::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw bad("range (expected start:stop:step)", text);
    const double lo = number<double>(parts[0], "range");
    const double hi = number<double>(parts[1], "range");
    const double step = number<double>(parts[2], "range");
    if (!(step > 0) || hi < lo) throw bad("range", text);
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    for (std::size_t i = 0; i < count; ++i) out.push_back(tidy(lo + static_cast<double>(i) * step));
  } else {
    for (auto part : split(text, ',')) out.push_back(number<double>(part, "number"));
  }
  return out;
}

std::vector<elm::Activation> parse_activation_list(std::string_view text) {
  if (text == "all") {
    return {elm::Activation::Sigmoid, elm::Activation::Sine, elm::Activation::Hardlim,
            elm::Activation::Triangular, elm::Activation::Radial};
  }
  std::vector<elm::Activation> out;
  for (auto part : split(text, ',')) out.push_back(elm::parse_activation(part));
  return out;
}

std::pair<std::vector<std::string>, std::string> extract_config_flag(std::vector<std::string> args) {
  std::string path;
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw Error(ErrorCode::InvalidArgument, "--config needs a path");
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  return {std::move(rest), std::move(path)};
}

}  // namespace lelm::cli
