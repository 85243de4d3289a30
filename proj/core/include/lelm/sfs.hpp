#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lelm/elm.hpp"
#include "lelm/features.hpp"

namespace lelm::sfs {

using features::FeatureId;

struct SfsConfig {
  elm::TrainConfig train{};
  features::FeatureMode mode = features::FeatureMode::Rectified;
  /// Candidate pool; defaults to all fourteen features.
  std::vector<FeatureId> pool{features::all_features().begin(), features::all_features().end()};
  unsigned threads = 1;
};

struct SfsRound {
  std::vector<FeatureId> initial_subset;
  /// Verify accuracy of subset + {candidate}; undefined candidates score 0.
  std::map<FeatureId, double> candidate_scores;
  std::vector<FeatureId> undefined;
  std::optional<FeatureId> selected;
  double best_so_far = -1.0;
};

struct SfsTrace {
  std::vector<SfsRound> rounds;
  std::vector<FeatureId> final_subset;
  std::size_t evaluations = 0;

  /// Verify accuracy of final_subset, or -1 when nothing was selected.
  double final_accuracy() const { return rounds.empty() ? -1.0 : rounds.back().best_so_far; }
};

/// Greedy forward selection over precomputed feature columns. Each round
/// retrains a fresh logistic-ELM for every remaining candidate and scores
/// it on the verify split; the best candidate joins the subset only if it
/// strictly beats the previous best. Ties go to the lowest feature id.
/// `undefined` lists pool features that could not be computed on some
/// window; they are scored 0 and never selected.
SfsTrace sfs_select(const features::FeatureMatrix& train, std::span<const int> train_labels,
                    const features::FeatureMatrix& verify, std::span<const int> verify_labels,
                    const SfsConfig& config, std::span<const FeatureId> undefined = {});

/// Extracts the pool features from raw windows, then runs the search.
SfsTrace sfs_select(std::span<const features::SignalWindow> train,
                    std::span<const features::SignalWindow> verify, const SfsConfig& config);

/// JSON export of the full trace.
std::string trace_to_json(const SfsTrace& trace);
/// Plain-text table: one column per round, one row per feature.
std::string trace_to_table(const SfsTrace& trace);

}  // namespace lelm::sfs
