#include <benchmark/benchmark.h>

#include "lelm/chaos.hpp"
#include "lelm/dataio.hpp"
#include "lelm/elm.hpp"
#include "lelm/features.hpp"
#include "lelm/linalg.hpp"
#include "lelm/random.hpp"
#include "lelm/synthetic.hpp"

namespace {

using lelm::features::FeatureId;

const lelm::dataio::SplitDataset& dataset() {
  static const auto ds = lelm::synthetic::generate_dataset({});
  return ds;
}

const std::vector<FeatureId> kIds{FeatureId::MeanSquareAmplitude, FeatureId::PeakToPeak,
                                  FeatureId::WaveformIndex, FeatureId::AverageAmplitude};

void BM_ExtractAllFeatures(benchmark::State& state) {
  const auto& w = dataset().test;
  const std::vector<FeatureId> all(lelm::features::all_features().begin(),
                                   lelm::features::all_features().end());
  for (auto _ : state) {
    benchmark::DoNotOptimize(lelm::features::extract_matrix(w, all));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(w.size()));
}
BENCHMARK(BM_ExtractAllFeatures);

void BM_PredictWindows(benchmark::State& state) {
  const auto& ds = dataset();
  const auto f = lelm::features::extract_matrix(ds.train, kIds);
  const auto model = lelm::elm::train(f, lelm::dataio::labels_of(ds.train), {});
  std::vector<lelm::features::SignalWindow> w(ds.train.begin(), ds.train.begin() + 300);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lelm::elm::predict_windows(model, w));
  }
  state.SetItemsProcessed(state.iterations() * 300);
}
BENCHMARK(BM_PredictWindows)->Unit(benchmark::kMillisecond);

void BM_Train(benchmark::State& state) {
  const auto& ds = dataset();
  const auto f = lelm::features::extract_matrix(ds.train, kIds);
  const auto y = lelm::dataio::labels_of(ds.train);
  lelm::elm::TrainConfig cfg;
  cfg.neurons = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(lelm::elm::train(f, y, cfg));
  }
}
BENCHMARK(BM_Train)->Arg(20)->Arg(100);

void BM_Pinv(benchmark::State& state) {
  const auto n = state.range(0);
  lelm::Rng rng(1);
  lelm::Matrix a(n * 2, n);
  for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = rng.normal();
  for (auto _ : state) {
    benchmark::DoNotOptimize(lelm::linalg::pinv(a));
  }
}
BENCHMARK(BM_Pinv)->Arg(20)->Arg(50)->Arg(200);

void BM_WeightMatrix(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(lelm::chaos::build_weight_matrix({}, 14, 100));
  }
}
BENCHMARK(BM_WeightMatrix);

}  // namespace
BENCHMARK_MAIN();
