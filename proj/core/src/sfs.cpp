#include "lelm/sfs.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "lelm/error.hpp"
#include "lelm/parallel.hpp"

namespace lelm::sfs {

namespace {

bool contains(std::span<const FeatureId> ids, FeatureId id) {
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

std::vector<int> labels_of(std::span<const features::SignalWindow> windows) {
  std::vector<int> out;
  out.reserve(windows.size());
  for (const auto& w : windows) out.push_back(w.label);
  return out;
}

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string subset_text(const std::vector<FeatureId>& ids) {
  if (ids.empty()) return "{}";
  std::string s = "{";
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) s += ",";
    s += "F" + std::to_string(features::to_int(ids[i]));
  }
  return s + "}";
}

}  // namespace

SfsTrace sfs_select(const features::FeatureMatrix& train, std::span<const int> train_labels,
                    const features::FeatureMatrix& verify, std::span<const int> verify_labels,
                    const SfsConfig& config, std::span<const FeatureId> undefined) {
  if (train.rows() == 0 || verify.rows() == 0) {
    throw Error(ErrorCode::InvalidArgument, "SFS needs non-empty train and verify sets");
  }
  std::vector<FeatureId> pool = config.pool;
  std::sort(pool.begin(), pool.end());
  if (std::adjacent_find(pool.begin(), pool.end()) != pool.end()) {
    throw Error(ErrorCode::DuplicateFeature, "SFS pool lists a feature twice");
  }

  elm::TrainConfig train_cfg = config.train;
  if (train_cfg.class_count <= 0) {
    const int max_train = *std::max_element(train_labels.begin(), train_labels.end());
    const int max_verify = *std::max_element(verify_labels.begin(), verify_labels.end());
    train_cfg.class_count = std::max(max_train, max_verify);
  }

  SfsTrace trace;
  std::vector<FeatureId> subset;
  double best = -1.0;
  while (subset.size() < pool.size()) {
    SfsRound round;
    round.initial_subset = subset;

    std::vector<FeatureId> candidates;
    for (auto id : pool) {
      if (!contains(subset, id)) candidates.push_back(id);
    }
    std::vector<double> scores(candidates.size(), 0.0);
    parallel_for(candidates.size(), config.threads, [&](std::size_t c) {
      if (contains(undefined, candidates[c])) return;
      std::vector<FeatureId> trial = subset;
      trial.push_back(candidates[c]);
      const auto model = elm::train(train.select(trial), train_labels, train_cfg, config.mode);
      scores[c] = elm::accuracy(elm::predict(model, verify.select(trial)), verify_labels);
    });
    trace.evaluations += candidates.size();

    std::optional<std::size_t> arg;
    double round_max = -1.0;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      round.candidate_scores[candidates[c]] = scores[c];
      if (contains(undefined, candidates[c])) {
        round.undefined.push_back(candidates[c]);
        continue;
      }
      if (scores[c] > round_max) {
        round_max = scores[c];
        arg = c;
      }
    }
    if (arg && round_max > best) {
      best = round_max;
      round.selected = candidates[*arg];
      subset.push_back(candidates[*arg]);
    }
    round.best_so_far = best;
    const bool stop = !round.selected.has_value();
    trace.rounds.push_back(std::move(round));
    if (stop) break;
  }
  trace.final_subset = subset;
  return trace;
}

SfsTrace sfs_select(std::span<const features::SignalWindow> train,
                    std::span<const features::SignalWindow> verify, const SfsConfig& config) {
  if (train.empty() || verify.empty()) {
    throw Error(ErrorCode::InvalidArgument, "SFS needs non-empty train and verify sets");
  }
  if (train.front().samples.size() != verify.front().samples.size()) {
    throw Error(ErrorCode::LengthMismatch, "train and verify windows differ in length");
  }
  std::vector<FeatureId> defined;
  std::vector<FeatureId> undefined;
  for (auto id : config.pool) {
    bool ok = true;
    for (auto set : {train, verify}) {
      for (const auto& w : set) {
        if (!features::try_extract_feature(w.samples, id, config.mode)) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
    }
    (ok ? defined : undefined).push_back(id);
  }
  const auto train_labels = labels_of(train);
  const auto verify_labels = labels_of(verify);
  if (defined.empty()) {
    return sfs_select(features::FeatureMatrix{Matrix(train.size(), 0), {}}, train_labels,
                      features::FeatureMatrix{Matrix(verify.size(), 0), {}}, verify_labels,
                      config, undefined);
  }
  const auto f_train = features::extract_matrix(train, defined, config.mode, config.threads);
  const auto f_verify = features::extract_matrix(verify, defined, config.mode, config.threads);
  return sfs_select(f_train, train_labels, f_verify, verify_labels, config, undefined);
}

std::string trace_to_json(const SfsTrace& trace) {
  using nlohmann::json;
  auto ids_json = [](const std::vector<FeatureId>& ids) {
    json a = json::array();
    for (auto id : ids) a.push_back(features::to_int(id));
    return a;
  };
  json rounds = json::array();
  for (const auto& r : trace.rounds) {
    json scores = json::object();
    for (const auto& [id, acc] : r.candidate_scores) {
      scores[std::to_string(features::to_int(id))] = acc;
    }
    rounds.push_back({{"initial_subset", ids_json(r.initial_subset)},
                      {"candidate_scores", std::move(scores)},
                      {"undefined", ids_json(r.undefined)},
                      {"selected", r.selected ? json(features::to_int(*r.selected)) : json()},
                      {"best_so_far", r.best_so_far}});
  }
  json doc = {{"rounds", std::move(rounds)},
              {"final_subset", ids_json(trace.final_subset)},
              {"final_accuracy", trace.final_accuracy()},
              {"evaluations", trace.evaluations}};
  return doc.dump(2) + "\n";
}

std::string trace_to_table(const SfsTrace& trace) {
  std::vector<std::vector<std::string>> rows;
  auto header = std::vector<std::string>{""};
  auto initial = std::vector<std::string>{"Initial Feature Pool"};
  for (std::size_t r = 0; r < trace.rounds.size(); ++r) {
    header.push_back("Round " + std::to_string(r + 1));
    initial.push_back(subset_text(trace.rounds[r].initial_subset));
  }
  rows.push_back(header);
  rows.push_back(initial);
  for (auto id : features::all_features()) {
    std::vector<std::string> row{"Feature " + std::to_string(features::to_int(id))};
    bool any = false;
    for (const auto& r : trace.rounds) {
      const auto it = r.candidate_scores.find(id);
      if (it == r.candidate_scores.end()) {
        row.push_back("-");
        continue;
      }
      any = true;
      if (std::find(r.undefined.begin(), r.undefined.end(), id) != r.undefined.end()) {
        row.push_back("undef");
      } else {
        row.push_back(fixed2(it->second) + (r.selected == id ? "*" : ""));
      }
    }
    if (any) rows.push_back(std::move(row));
  }
  std::vector<std::string> selected{"Selected"};
  std::vector<std::string> after{"Feature Pool"};
  for (const auto& r : trace.rounds) {
    selected.push_back(r.selected ? "Feature " + std::to_string(features::to_int(*r.selected))
                                  : "none");
    auto pool = r.initial_subset;
    if (r.selected) pool.push_back(*r.selected);
    after.push_back(subset_text(pool));
  }
  rows.push_back(selected);
  rows.push_back(after);

  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::ostringstream os;
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      os << row[c];
      if (c + 1 < row.size()) os << std::string(width[c] - row[c].size() + 2, ' ');
    }
    os << "\n";
  }
  os << "final subset " << subset_text(trace.final_subset) << " verify accuracy "
     << fixed2(trace.final_accuracy()) << " (" << trace.evaluations << " evaluations)\n";
  return os.str();
}

}  // namespace lelm::sfs
