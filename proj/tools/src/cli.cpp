#include "lelm_cli/cli.hpp"

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lelm/dataio.hpp"
#include "lelm/error.hpp"
#include "lelm/eval.hpp"
#include "lelm/model_io.hpp"
#include "lelm/report.hpp"
#include "lelm/sfs.hpp"
#include "lelm/synthetic.hpp"
#include "lelm_cli/options.hpp"

namespace lelm::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct ModelFlags {
  std::size_t neurons = 20;
  std::string activation = "sigmoid";
  double z1 = 0.6;
  double mu = 3.9;
  bool no_normalize = false;
  std::string feature_mode = "rectified";
  bool strict_formulas = false;
  std::string features = "sfs";
};

struct CommonFlags {
  unsigned threads = 1;
  std::string format = "table";
  std::string out;
  bool timestamps = false;
};

struct Resolved {
  elm::TrainConfig train;
  features::FeatureMode mode = features::FeatureMode::Rectified;
  std::vector<features::FeatureId> features;  // empty: SFS
};

void add_model_flags(CLI::App* cmd, ModelFlags& f, bool with_features = true) {
  cmd->add_option("--neurons", f.neurons, "Hidden neurons L")->check(CLI::PositiveNumber);
  cmd->add_option("--activation", f.activation,
                  "sigmoid | sine | hardlim | triangular | radial");
  cmd->add_option("--z1", f.z1, "Logistic map initial value, in (0,1)");
  cmd->add_option("--mu", f.mu, "Logistic map coefficient, in (3.56995,4]");
  cmd->add_flag("--no-normalize", f.no_normalize, "Feed raw (unscaled) features to the ELM");
  cmd->add_option("--feature-mode", f.feature_mode,
                  "rectified | signed_mean denominator for impulsion/clearance");
  cmd->add_flag("--strict-formulas", f.strict_formulas, "Shorthand for --feature-mode signed_mean");
  if (with_features) {
    cmd->add_option("--features", f.features,
                    "'sfs' to select by forward selection, 'all', or a list such as 7,4,9,6");
  }
}

void add_common_flags(CLI::App* cmd, CommonFlags& c, const std::string& formats) {
  cmd->add_option("--threads", c.threads, "Worker threads (default from LELM_THREADS)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--format", c.format, "Output format: " + formats);
  cmd->add_option("--out", c.out, "Write the report to this file instead of stdout");
  cmd->add_flag("--timestamps", c.timestamps, "Stamp reports with the generation time");
}

Resolved resolve(const ModelFlags& f) {
  Resolved r;
  r.train.neurons = f.neurons;
  r.train.activation = elm::parse_activation(f.activation);
  r.train.chaos = {f.z1, f.mu};
  chaos::validate(r.train.chaos);
  r.train.normalize = !f.no_normalize;
  r.mode = f.strict_formulas ? features::FeatureMode::SignedMean
                          : features::parse_feature_mode(f.feature_mode);
  r.features = parse_feature_list(f.features);
  return r;
}

void check_format(const std::string& format, std::initializer_list<std::string_view> allowed) {
  for (auto a : allowed) {
    if (format == a) return;
  }
  throw CLI::ValidationError("--format", "unsupported format '" + format + "'");
}

std::string now_utc() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void emit(const CommonFlags& c, std::string text, std::ostream& out) {
  if (c.timestamps) {
    if (c.format == "json") {
      auto doc = json::parse(text);
      doc["generated_at"] = now_utc();
      text = doc.dump(2) + "\n";
    } else {
      text = "# generated " + now_utc() + "\n" + text;
    }
  }
  if (c.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(c.out, std::ios::binary);
  if (!file) throw Error(ErrorCode::IoError, "cannot write " + c.out);
  file << text;
}

dataio::SplitDataset load_split(const std::string& manifest) {
  return dataio::load_dataset(dataio::load_manifest(manifest));
}

eval::PipelineConfig pipeline_config(const Resolved& r, unsigned threads) {
  eval::PipelineConfig pc;
  pc.train = r.train;
  pc.mode = r.mode;
  pc.features = r.features;
  pc.threads = threads;
  return pc;
}

std::vector<features::FeatureId> features_for(const dataio::SplitDataset& data, const Resolved& r,
                                              unsigned threads) {
  if (!r.features.empty()) return r.features;
  sfs::SfsConfig cfg;
  cfg.train = r.train;
  cfg.mode = r.mode;
  cfg.threads = threads;
  auto trace = sfs::sfs_select(data.train, data.verify, cfg);
  if (trace.final_subset.empty()) {
    throw Error(ErrorCode::FeatureUndefined, "SFS found no computable feature");
  }
  return trace.final_subset;
}

std::string ids_text(const std::vector<features::FeatureId>& ids) {
  std::string s;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    s += (i ? "," : "") + std::to_string(features::to_int(ids[i]));
  }
  return s;
}

std::string shortest(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

/// Adds `--key value` tokens from a JSON overlay for options not already
/// given on the command line. Top-level keys apply when the selected
/// subcommand has that option; an object keyed by the subcommand name
/// applies strictly.
std::vector<std::string> apply_overlay(const std::vector<std::string>& args,
                                       const std::string& config_path, CLI::App& app) {
  if (config_path.empty()) return args;
  std::ifstream in(config_path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open config " + config_path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, config_path + ": " + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::ParseError, config_path + ": expected an object");

  CLI::App* sub = nullptr;
  for (const auto& a : args) {
    if (a.empty() || a[0] == '-') continue;
    sub = app.get_subcommand_ptr(a).get();
    break;
  }
  if (sub == nullptr) return args;

  auto given = [&](const std::string& key) {
    for (const auto& a : args) {
      if (a == "--" + key || a.rfind("--" + key + "=", 0) == 0) return true;
    }
    return false;
  };
  std::vector<std::string> extra;
  auto add = [&](const std::string& key, const json& value, bool strict) {
    if (key == sub->get_name() && value.is_object()) return;
    if (sub->get_option_no_throw("--" + key) == nullptr) {
      if (strict) {
        throw Error(ErrorCode::InvalidArgument,
                    "config key '" + key + "' is not an option of " + sub->get_name());
      }
      return;
    }
    if (given(key)) return;
    auto token = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
    if (value.is_boolean()) {
      if (value.get<bool>()) extra.push_back("--" + key);
    } else if (value.is_array()) {
      for (const auto& v : value) {
        extra.push_back("--" + key);
        extra.push_back(token(v));
      }
    } else {
      extra.push_back("--" + key);
      extra.push_back(token(value));
    }
  };
  for (const auto& [key, value] : doc.items()) add(key, value, false);
  if (doc.contains(sub->get_name()) && doc[sub->get_name()].is_object()) {
    for (const auto& [key, value] : doc[sub->get_name()].items()) add(key, value, true);
  }
  auto merged = args;
  merged.insert(merged.end(), extra.begin(), extra.end());
  return merged;
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"lelm: logistic-ELM bearing fault diagnosis toolkit", "lelm"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand help for every subcommand");
  app.footer(
      "Global: --config FILE overlays JSON options (command-line flags win).\n"
      "Environment: LELM_THREADS sets the default --threads.");

  ModelFlags mf;
  CommonFlags cf;
  if (const char* env = std::getenv("LELM_THREADS"); env != nullptr && *env != '\0') {
    const std::string_view text(env);
    unsigned v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || v == 0) {
      err << "lelm: InvalidArgument: LELM_THREADS must be a positive integer, got '" << text
          << "'\n";
      return kExitUsage;
    }
    cf.threads = v;
  }
  std::string manifest, signal, model_path, out_dir, report_path;
  std::vector<std::string> manifests;
  std::size_t window_len = 2048, stride = 0, samples = 300, repetitions = 5, trials = 50;
  std::size_t windows_per_class = 60;
  std::uint64_t seed = 1;
  double noise_scale = 1.0;
  std::string activations = "all", neuron_range = "1:30", pearson_ranges = "1:20,20:30";
  std::string z1_values = "0.1:0.9:0.1", mu_values = "3.95:3.99:0.01";
  std::string extract_features = "all", split_name = "all";

  auto* extract = app.add_subcommand("extract", "Signals to a feature CSV");
  extract->add_option("--manifest", manifest, "Dataset manifest (JSON)");
  extract->add_option("--signal", signal, "Single signal file, one value per line");
  extract->add_option("--window-len", window_len, "Samples per window (with --signal)");
  extract->add_option("--stride", stride, "Window stride (with --signal); 0 means window-len");
  extract->add_option("--features", extract_features, "'all' or a list such as 7,4,9,6");
  extract->add_option("--split", split_name, "all | train | verify | test (with --manifest)");
  extract->add_option("--feature-mode", mf.feature_mode, "rectified | signed_mean");
  extract->add_flag("--strict-formulas", mf.strict_formulas, "Shorthand for --feature-mode signed_mean");
  add_common_flags(extract, cf, "csv");

  auto* train = app.add_subcommand("train", "Train a model and report verify accuracy");
  train->add_option("--manifest", manifest, "Dataset manifest (JSON)")->required();
  train->add_option("--out", model_path, "Model file to write")->required();
  train->add_option("--report", report_path, "Also write a JSON run summary here");
  add_model_flags(train, mf);
  train->add_option("--threads", cf.threads, "Worker threads (default from LELM_THREADS)")
      ->check(CLI::PositiveNumber);
  train->add_option("--format", cf.format, "Output format: table | json");
  train->add_flag("--timestamps", cf.timestamps, "Stamp the summary with the generation time");

  auto* predict = app.add_subcommand("predict", "Classify every window of a signal file");
  predict->add_option("--model", model_path, "Model file")->required();
  predict->add_option("--signal", signal, "Signal file, one value per line")->required();
  predict->add_option("--window-len", window_len, "Samples per window");
  predict->add_option("--stride", stride, "Window stride; 0 means window-len");
  add_common_flags(predict, cf, "table | json");

  auto* evaluate = app.add_subcommand(
      "evaluate", "Test accuracy per manifest (full pipeline, or a fixed --model)");
  evaluate->add_option("--manifest", manifests, "Dataset manifest; repeat for conditions")
      ->required();
  evaluate->add_option("--model", model_path, "Score this model instead of training");
  add_model_flags(evaluate, mf);
  add_common_flags(evaluate, cf, "table | json");

  auto* sfs_cmd = app.add_subcommand("sfs", "Sequential forward feature selection");
  sfs_cmd->add_option("--manifest", manifest, "Dataset manifest (JSON)")->required();
  add_model_flags(sfs_cmd, mf, false);
  add_common_flags(sfs_cmd, cf, "table | json");

  auto* sweep_n = app.add_subcommand("sweep-neurons", "Accuracy over activations x neurons");
  sweep_n->add_option("--manifest", manifest, "Dataset manifest (JSON)")->required();
  sweep_n->add_option("--activations", activations, "'all' or a comma list");
  sweep_n->add_option("--neuron-range", neuron_range, "Ascending counts, e.g. 1:30 or 5,10,20");
  sweep_n->add_option("--pearson-ranges", pearson_ranges,
                      "Neuron sub-ranges for the accuracy/neuron correlation");
  add_model_flags(sweep_n, mf);
  add_common_flags(sweep_n, cf, "table | json | csv");

  auto* sweep_c = app.add_subcommand("sweep-chaos", "Accuracy over (z1, mu) grid");
  sweep_c->add_option("--manifest", manifest, "Dataset manifest (JSON)")->required();
  sweep_c->add_option("--z1-values", z1_values, "start:stop:step or a comma list");
  sweep_c->add_option("--mu-values", mu_values, "start:stop:step or a comma list");
  add_model_flags(sweep_c, mf);
  add_common_flags(sweep_c, cf, "table | json | csv");

  auto* stability = app.add_subcommand("stability", "Logistic-ELM vs random ELM over trials");
  stability->add_option("--manifest", manifest, "Dataset manifest (JSON)")->required();
  stability->add_option("--trials", trials, "Number of trials")->check(CLI::Range(2, 1000000));
  stability->add_option("--seed", seed, "Base seed for the random ELM");
  add_model_flags(stability, mf);
  add_common_flags(stability, cf, "table | json");

  auto* bench = app.add_subcommand("bench", "Inference latency from raw windows");
  bench->add_option("--model", model_path, "Model file")->required();
  bench->add_option("--manifest", manifest, "Take windows from this dataset (test split first)");
  bench->add_option("--signal", signal, "Or window this signal file");
  bench->add_option("--window-len", window_len, "Samples per window (with --signal)");
  bench->add_option("--samples", samples, "Windows per timed pass")->check(CLI::PositiveNumber);
  bench->add_option("--repetitions", repetitions, "Timed passes")->check(CLI::Range(5, 1000000));
  add_common_flags(bench, cf, "table | json");

  auto* gen = app.add_subcommand("gen-synthetic", "Write the seeded synthetic 11-class dataset");
  gen->add_option("--out-dir", out_dir, "Directory for signal files and manifest.json")
      ->required();
  gen->add_option("--seed", seed, "Generator seed");
  gen->add_option("--windows-per-class", windows_per_class, "Windows per class")
      ->check(CLI::Range(3, 1000000));
  gen->add_option("--window-len", window_len, "Samples per window")->check(CLI::Range(2, 1 << 24));
  gen->add_option("--noise-scale", noise_scale, "Background noise multiplier")
      ->check(CLI::PositiveNumber);
  seed = synthetic::SyntheticOptions{}.seed;

  try {
    auto [args, config_path] = extract_config_flag(raw_args);
    args = apply_overlay(args, config_path, app);
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const Error& e) {
    err << "lelm: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (stride == 0) stride = window_len;

    if (extract->parsed()) {
      check_format(cf.format == "table" ? "csv" : cf.format, {"csv"});
      if (manifest.empty() == signal.empty()) {
        throw CLI::ValidationError("extract", "give exactly one of --manifest or --signal");
      }
      const auto mode = mf.strict_formulas ? features::FeatureMode::SignedMean
                                        : features::parse_feature_mode(mf.feature_mode);
      auto ids = parse_feature_list(extract_features);
      if (ids.empty()) throw CLI::ValidationError("--features", "extract needs explicit features");
      std::vector<std::pair<std::string, std::vector<features::SignalWindow>>> groups;
      if (!signal.empty()) {
        std::vector<features::SignalWindow> wins;
        for (auto& w : dataio::window_signal(dataio::load_signal(signal), window_len, stride)) {
          wins.push_back({std::move(w), 0});
        }
        groups.emplace_back("signal", std::move(wins));
      } else {
        if (split_name != "all" && split_name != "train" && split_name != "verify" &&
            split_name != "test") {
          throw CLI::ValidationError("--split", "expected all | train | verify | test");
        }
        auto data = load_split(manifest);
        if (split_name == "all" || split_name == "train") groups.emplace_back("train", data.train);
        if (split_name == "all" || split_name == "verify")
          groups.emplace_back("verify", data.verify);
        if (split_name == "all" || split_name == "test") groups.emplace_back("test", data.test);
      }
      std::ostringstream csv;
      csv << "split,window,label";
      for (auto id : ids) csv << "," << features::name(id);
      csv << "\n";
      for (const auto& [name, wins] : groups) {
        const auto f = features::extract_matrix(wins, ids, mode, cf.threads);
        for (std::size_t i = 0; i < wins.size(); ++i) {
          csv << name << "," << i << ",";
          if (wins[i].label > 0) csv << wins[i].label;
          for (std::size_t j = 0; j < ids.size(); ++j) {
            csv << "," << shortest(f.values(static_cast<Eigen::Index>(i),
                                            static_cast<Eigen::Index>(j)));
          }
          csv << "\n";
        }
      }
      emit(cf, csv.str(), out);
      return kExitOk;
    }

    if (train->parsed()) {
      check_format(cf.format, {"table", "json"});
      const auto r = resolve(mf);
      const auto data = load_split(manifest);
      const auto result = eval::run_pipeline(data, pipeline_config(r, cf.threads));
      elm::save_model(result.model, model_path);
      if (!report_path.empty()) {
        std::ofstream rep(report_path, std::ios::binary);
        if (!rep) throw Error(ErrorCode::IoError, "cannot write " + report_path);
        rep << report::to_json(result);
      }
      if (cf.format == "json") {
        json doc = {{"model", model_path},
                    {"features", json::parse(report::to_json(result))["features"]},
                    {"verify_accuracy", result.verify_accuracy}};
        emit(cf, doc.dump(2) + "\n", out);
      } else {
        emit(cf,
             "features " + ids_text(result.model.feature_ids) + "\nverify_accuracy " +
                 report::fixed(result.verify_accuracy, 4) + "\n",
             out);
      }
      return kExitOk;
    }

    if (predict->parsed()) {
      check_format(cf.format, {"table", "json"});
      const auto model = elm::load_model(model_path);
      std::vector<features::SignalWindow> wins;
      for (auto& w : dataio::window_signal(dataio::load_signal(signal), window_len, stride)) {
        wins.push_back({std::move(w), 0});
      }
      const auto labels = elm::predict_windows(model, wins, cf.threads);
      std::string text;
      if (cf.format == "json") {
        text = json{{"predictions", labels}}.dump(2) + "\n";
      } else {
        for (int l : labels) text += std::to_string(l) + "\n";
      }
      emit(cf, text, out);
      return kExitOk;
    }

    if (evaluate->parsed()) {
      check_format(cf.format, {"table", "json"});
      const auto r = resolve(mf);
      eval::MultiConditionReport rep;
      if (!model_path.empty()) {
        const auto model = elm::load_model(model_path);
        for (const auto& m : manifests) {
          const auto data = load_split(m);
          const auto pred = elm::predict_windows(model, data.test, cf.threads);
          const auto vpred = elm::predict_windows(model, data.verify, cf.threads);
          rep.conditions.push_back({m, model.feature_ids,
                                    elm::accuracy(vpred, dataio::labels_of(data.verify)),
                                    elm::accuracy(pred, dataio::labels_of(data.test))});
          rep.average_test_accuracy += rep.conditions.back().test_accuracy;
        }
        rep.average_test_accuracy /= static_cast<double>(rep.conditions.size());
      } else {
        std::vector<fs::path> paths(manifests.begin(), manifests.end());
        rep = eval::multi_condition_eval(paths, pipeline_config(r, cf.threads));
      }
      emit(cf, cf.format == "json" ? report::to_json(rep) : report::to_table(rep), out);
      return kExitOk;
    }

    if (sfs_cmd->parsed()) {
      check_format(cf.format, {"table", "json"});
      const auto r = resolve(mf);
      const auto data = load_split(manifest);
      sfs::SfsConfig cfg;
      cfg.train = r.train;
      cfg.mode = r.mode;
      cfg.threads = cf.threads;
      const auto trace = sfs::sfs_select(data.train, data.verify, cfg);
      emit(cf, cf.format == "json" ? sfs::trace_to_json(trace) : sfs::trace_to_table(trace), out);
      return kExitOk;
    }

    if (sweep_n->parsed()) {
      check_format(cf.format, {"table", "json", "csv"});
      const auto r = resolve(mf);
      const auto acts = parse_activation_list(activations);
      const auto counts = parse_count_range(neuron_range);
      std::vector<std::pair<std::size_t, std::size_t>> sub_ranges;
      for (const auto& part : CLI::detail::split(pearson_ranges, ',')) {
        if (part.empty()) continue;
        const auto rr = parse_count_range(part);
        sub_ranges.emplace_back(rr.front(), rr.back());
      }
      const auto data = load_split(manifest);
      const auto ids = features_for(data, r, cf.threads);
      const auto prepared = eval::prepare_features(data, ids, r.mode, cf.threads);
      const auto sweep = eval::sweep_neurons(prepared, acts, counts, r.train, cf.threads);

      // Correlation between accuracy and neuron count per activation and sub-range.
      json corr = json::array();
      std::vector<std::vector<std::string>> corr_rows{{"activation", "neurons", "pearson"}};
      for (std::size_t a = 0; a < acts.size(); ++a) {
        for (auto [lo, hi] : sub_ranges) {
          std::vector<double> xs, ys;
          for (std::size_t c = 0; c < counts.size(); ++c) {
            if (counts[c] >= lo && counts[c] <= hi) {
              xs.push_back(static_cast<double>(counts[c]));
              ys.push_back(sweep.accuracy[a][c]);
            }
          }
          const std::string range = std::to_string(lo) + "-" + std::to_string(hi);
          json value;
          std::string shown = "undefined";
          try {
            const double p = eval::pearson(xs, ys);
            value = p;
            shown = report::fixed(p, 3);
          } catch (const Error&) {
            // constant accuracy or fewer than two points
          }
          corr.push_back({{"activation", sweep.row_labels[a]}, {"range", range},
                          {"pearson", value}});
          corr_rows.push_back({sweep.row_labels[a], range, shown});
        }
      }
      std::string text;
      if (cf.format == "json") {
        auto doc = json::parse(report::to_json(sweep));
        doc["features"] = json::parse("[" + ids_text(ids) + "]");
        doc["pearson"] = std::move(corr);
        text = doc.dump(2) + "\n";
      } else if (cf.format == "csv") {
        text = report::to_csv(sweep);
      } else {
        text = "features " + ids_text(ids) + "\n" + report::to_table(sweep) + "\n" +
               report::format_table(corr_rows);
      }
      emit(cf, text, out);
      return kExitOk;
    }

    if (sweep_c->parsed()) {
      check_format(cf.format, {"table", "json", "csv"});
      const auto r = resolve(mf);
      const auto z1s = parse_real_range(z1_values);
      const auto mus = parse_real_range(mu_values);
      for (double z : z1s) {
        for (double m : mus) chaos::validate({z, m});
      }
      const auto data = load_split(manifest);
      const auto ids = features_for(data, r, cf.threads);
      const auto prepared = eval::prepare_features(data, ids, r.mode, cf.threads);
      const auto sweep = eval::sweep_chaos(prepared, z1s, mus, r.train, cf.threads);
      std::string text;
      if (cf.format == "json") {
        auto doc = json::parse(report::to_json(sweep));
        doc["features"] = json::parse("[" + ids_text(ids) + "]");
        text = doc.dump(2) + "\n";
      } else if (cf.format == "csv") {
        text = report::to_csv(sweep);
      } else {
        text = "features " + ids_text(ids) + "\n" + report::to_table(sweep) + "best:";
        for (auto [row, col] : sweep.argmax_cells()) {
          text += " (z1=" + sweep.row_labels[row] + ", mu=" + sweep.col_labels[col] + ")";
        }
        text += "\n";
      }
      emit(cf, text, out);
      return kExitOk;
    }

    if (stability->parsed()) {
      check_format(cf.format, {"table", "json"});
      const auto r = resolve(mf);
      const auto data = load_split(manifest);
      const auto ids = features_for(data, r, cf.threads);
      const auto prepared = eval::prepare_features(data, ids, r.mode, cf.threads);
      const auto rep = eval::stability_study(prepared, r.train, trials, seed, cf.threads);
      emit(cf, cf.format == "json" ? report::to_json(rep) : report::to_table(rep), out);
      return kExitOk;
    }

    if (bench->parsed()) {
      check_format(cf.format, {"table", "json"});
      if (manifest.empty() == signal.empty()) {
        throw CLI::ValidationError("bench", "give exactly one of --manifest or --signal");
      }
      const auto model = elm::load_model(model_path);
      std::vector<features::SignalWindow> wins;
      if (!manifest.empty()) {
        const auto data = load_split(manifest);
        for (const auto* set : {&data.test, &data.verify, &data.train}) {
          wins.insert(wins.end(), set->begin(), set->end());
        }
      } else {
        for (auto& w : dataio::window_signal(dataio::load_signal(signal), window_len, stride)) {
          wins.push_back({std::move(w), 0});
        }
      }
      if (wins.size() > samples) wins.resize(samples);
      const auto rep = eval::bench_inference(model, wins, repetitions, cf.threads);
      emit(cf, cf.format == "json" ? report::to_json(rep) : report::to_table(rep), out);
      return kExitOk;
    }

    if (gen->parsed()) {
      synthetic::SyntheticOptions opts;
      opts.seed = seed;
      opts.windows_per_class = windows_per_class;
      opts.window_len = window_len;
      opts.noise_scale = noise_scale;
      const auto path = synthetic::write_dataset(out_dir, opts);
      out << path.string() << "\n";
      return kExitOk;
    }
  } catch (const CLI::Error& e) {
    err << "lelm: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "lelm: " << e.what() << "\n";
    return e.code() == ErrorCode::InvalidArgument || e.code() == ErrorCode::InvalidChaosParam ||
                   e.code() == ErrorCode::DuplicateFeature
               ? kExitUsage
               : kExitDataError;
  } catch (const std::exception& e) {
    err << "lelm: " << e.what() << "\n";
    return kExitDataError;
  }
  return kExitUsage;
}

}  // namespace lelm::cli
