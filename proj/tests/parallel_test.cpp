// The OpenMP kernels must reproduce their serial references bit for bit,
// whatever the thread count.

#include <gtest/gtest.h>

#include <cstring>

#include <omp.h>

#include "raga/selection.hpp"
#include "raga/training.hpp"

namespace raga {
namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof(double)) == 0; }

TEST(Parallel, PredictSeriesMatchesSerial) {
  const auto seq = load_corpus();
  const NetworkConfig cfg{2, 4, Activation::tanh, Activation::identity};
  const auto scale = fit_scaler(seq.as_reals(), -1, 1);
  for (int threads : {1, 2, 4}) {
    omp_set_num_threads(threads);
    const auto par = predict_series(table2_weights(), cfg, seq, scale, scale);
    const auto ser = predict_series_serial(table2_weights(), cfg, seq, scale, scale);
    ASSERT_EQ(par.size(), ser.size());
    for (std::size_t k = 0; k < par.size(); ++k) {
      EXPECT_EQ(par[k].t, ser[k].t);
      EXPECT_TRUE(same_bits(par[k].predicted, ser[k].predicted));
    }
  }
}

TEST(Parallel, TrainRestartsMatchSerial) {
  const auto seq = load_corpus();
  const NetworkConfig cfg{3, 3, Activation::sigmoid, Activation::identity};
  const auto scale = fit_scaler(seq.as_reals(), -1, 1);
  const auto ds = scale_dataset(embed_lags(seq, 3), scale, scale);
  TrainConfig tc;
  tc.max_epochs = 200;
  tc.restarts = 5;
  tc.seed = 11;
  const auto reference = train_serial(cfg, tc, ds);
  for (int threads : {1, 3, 8}) {
    omp_set_num_threads(threads);
    EXPECT_EQ(train(cfg, tc, ds), reference) << threads << " threads";
  }
}

TEST(Parallel, SweepMatchesSerialForAnyJobCount) {
  TrainConfig tc;
  tc.max_epochs = 100;
  tc.restarts = 2;
  auto grid = table1c_grid();
  grid.resize(6);
  for (auto& entry : grid) entry.train = tc;
  const auto seq = load_corpus();
  const auto reference = run_sweep_serial(grid, seq, {}, {}, {.base_seed = 7});
  for (int jobs : {1, 2, 5}) {
    const auto report = run_sweep(grid, seq, {}, {}, {.base_seed = 7, .jobs = jobs});
    ASSERT_EQ(report.cells.size(), reference.cells.size());
    EXPECT_EQ(report.best, reference.best);
    for (std::size_t k = 0; k < report.cells.size(); ++k) {
      EXPECT_TRUE(same_bits(report.cells[k].metrics.rmse, reference.cells[k].metrics.rmse));
      EXPECT_TRUE(same_bits(report.cells[k].metrics.mae, reference.cells[k].metrics.mae));
      EXPECT_EQ(report.cells[k].seed, reference.cells[k].seed);
    }
  }
}

}  // namespace
}  // namespace raga
