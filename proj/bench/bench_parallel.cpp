// Serial reference vs OpenMP kernels: restart-parallel training, the
// cell-parallel sweep and row-parallel prediction.

#include <benchmark/benchmark.h>

#include "raga/selection.hpp"
#include "raga/training.hpp"

namespace {

using namespace raga;

LagDataset corpus_dataset(std::size_t p) {
  const auto seq = load_corpus();
  const auto scale = fit_scaler(seq.as_reals(), -1, 1);
  return scale_dataset(embed_lags(seq, p), scale, scale);
}

TrainConfig short_training() {
  TrainConfig tc;
  tc.max_epochs = 500;
  tc.restarts = 8;
  return tc;
}

void BM_TrainSerial(benchmark::State& state) {
  const auto ds = corpus_dataset(2);
  const NetworkConfig cfg{2, 4, Activation::sigmoid, Activation::identity};
  for (auto _ : state) benchmark::DoNotOptimize(train_serial(cfg, short_training(), ds));
}
BENCHMARK(BM_TrainSerial)->Unit(benchmark::kMillisecond);

void BM_TrainParallel(benchmark::State& state) {
  const auto ds = corpus_dataset(2);
  const NetworkConfig cfg{2, 4, Activation::sigmoid, Activation::identity};
  for (auto _ : state) benchmark::DoNotOptimize(train(cfg, short_training(), ds));
}
BENCHMARK(BM_TrainParallel)->Unit(benchmark::kMillisecond);

std::vector<GridEntry> bench_grid() {
  auto grid = table1c_grid();
  grid.resize(8);
  TrainConfig tc;
  tc.max_epochs = 300;
  tc.restarts = 2;
  for (auto& entry : grid) entry.train = tc;
  return grid;
}

void BM_SweepSerial(benchmark::State& state) {
  const auto grid = bench_grid();
  const auto seq = load_corpus();
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep_serial(grid, seq, {}, {}, {}));
}
BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);

void BM_SweepParallel(benchmark::State& state) {
  const auto grid = bench_grid();
  const auto seq = load_corpus();
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep(grid, seq, {}, {}, {}));
}
BENCHMARK(BM_SweepParallel)->Unit(benchmark::kMillisecond);

void BM_PredictSerial(benchmark::State& state) {
  const auto seq = load_corpus();
  const NetworkConfig cfg{2, 4, Activation::tanh, Activation::identity};
  const auto scale = fit_scaler(seq.as_reals(), -1, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(predict_series_serial(table2_weights(), cfg, seq, scale, scale));
  }
}
BENCHMARK(BM_PredictSerial);

void BM_PredictParallel(benchmark::State& state) {
  const auto seq = load_corpus();
  const NetworkConfig cfg{2, 4, Activation::tanh, Activation::identity};
  const auto scale = fit_scaler(seq.as_reals(), -1, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(predict_series(table2_weights(), cfg, seq, scale, scale));
  }
}
BENCHMARK(BM_PredictParallel);

}  // namespace

BENCHMARK_MAIN();
