#include "raga/network.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <random>

#include "gradcheck.hpp"
#include "raga/error.hpp"
#include "raga/selection.hpp"

namespace raga {
namespace {

constexpr Activation kActs[] = {Activation::identity, Activation::tanh, Activation::sigmoid};

TEST(Activation, Values) {
  EXPECT_EQ(activate(Activation::tanh, 0.0), 0.0);
  EXPECT_EQ(activate(Activation::sigmoid, 0.0), 0.5);
  EXPECT_NEAR(activate(Activation::tanh, 1.0), 0.76159415595, 1e-11);
  EXPECT_EQ(activate(Activation::identity, -3.25), -3.25);
}

TEST(Activation, Derivatives) {
  EXPECT_EQ(activate_derivative(Activation::identity, 7.3), 1.0);
  EXPECT_EQ(activate_derivative(Activation::sigmoid, 0.0), 0.25);
  EXPECT_NEAR(activate_derivative(Activation::tanh, 1.0), 0.41997434161, 1e-11);
}

TEST(Activation, TanhMatchesExponentialForm) {
  for (double x = -20.0; x <= 20.0; x += 0.01) {
    const double formula = (1.0 - std::exp(-2.0 * x)) / (1.0 + std::exp(-2.0 * x));
    EXPECT_NEAR(activate(Activation::tanh, x), formula, 1e-12) << x;
  }
}

TEST(Activation, SaturatesWithoutOverflow) {
  for (double x : {-1e3, -700.0, 700.0, 1e3}) {
    for (auto a : {Activation::tanh, Activation::sigmoid}) {
      EXPECT_TRUE(std::isfinite(activate(a, x)));
      EXPECT_TRUE(std::isfinite(activate_derivative(a, x)));
    }
  }
  EXPECT_EQ(activate(Activation::sigmoid, -1e3), 0.0);
  EXPECT_EQ(activate(Activation::sigmoid, 1e3), 1.0);
  EXPECT_EQ(activate(Activation::tanh, 1e3), 1.0);
}

TEST(Activation, ParsesNames) {
  EXPECT_EQ(activation_from_string("Sigmoid"), Activation::sigmoid);
  EXPECT_EQ(activation_from_string("tanh"), Activation::tanh);
  EXPECT_EQ(activation_from_string("identity"), Activation::identity);
  EXPECT_THROW(activation_from_string("relu"), InputError);
}

TEST(NetworkConfig, LabelAndParameterCount) {
  const NetworkConfig cfg{2, 4, Activation::tanh, Activation::identity};
  EXPECT_EQ(cfg.label(), "N^{2-4-1}");
  EXPECT_EQ(cfg.parameter_count(), 17u);
  for (const auto& entry : table1c_grid()) {
    EXPECT_EQ(NetworkWeights(entry.net.p, entry.net.q).size(), entry.net.parameter_count());
  }
}

TEST(Forward, ZeroWeightsGiveZero) {
  const NetworkConfig cfg{3, 2, Activation::tanh, Activation::identity};
  const NetworkWeights w(3, 2);
  const std::vector<double> x{1.5, -2.0, 7.0};
  EXPECT_EQ(forward(w, cfg, x).output, 0.0);
}

TEST(Forward, HandComposedSingleUnit) {
  const NetworkConfig cfg{1, 1, Activation::tanh, Activation::identity};
  const NetworkWeights w(1, 1, {0.0, 1.0, 0.0, 1.0});
  const std::vector<double> x{1.0};
  const auto pass = forward(w, cfg, x);
  EXPECT_NEAR(pass.output, 0.76159415595, 1e-11);
  EXPECT_EQ(pass.hidden_pre, (std::vector<double>{1.0}));
  EXPECT_EQ(pass.output_pre, pass.output);
}

TEST(Forward, ShapeErrors) {
  const NetworkConfig cfg{2, 2, Activation::tanh, Activation::identity};
  EXPECT_THROW(forward(NetworkWeights(2, 3), cfg, std::vector<double>{1, 2}), ShapeError);
  EXPECT_THROW(forward(NetworkWeights(2, 2), cfg, std::vector<double>{1}), ShapeError);
  EXPECT_THROW(NetworkWeights(2, 2, {1.0, 2.0}), ShapeError);
}

TEST(Forward, DeterministicBitIdentical) {
  std::mt19937_64 gen(5);
  auto c = testing::random_grad_case(gen, Activation::sigmoid, Activation::tanh);
  const auto a = forward(c.weights, c.cfg, c.ds.input(0));
  const auto b = forward(c.weights, c.cfg, c.ds.input(0));
  EXPECT_EQ(std::memcmp(&a.output, &b.output, sizeof(double)), 0);
  EXPECT_EQ(a.hidden_post, b.hidden_post);
}

TEST(Mse, SimpleCases) {
  const NetworkConfig cfg{1, 1, Activation::identity, Activation::identity};
  const NetworkWeights zero(1, 1);
  const auto ds = embed_lags(std::vector<double>{0, 1, -1}, 1);
  EXPECT_DOUBLE_EQ(mse(zero, cfg, ds), 1.0);
  // y = 0.5 + 1 * (0 + 1 * x) interpolates 0 -> 0.5 -> 1.0
  const auto line = embed_lags(std::vector<double>{0.0, 0.5, 1.0}, 1);
  EXPECT_DOUBLE_EQ(mse(NetworkWeights(1, 1, {0.0, 1.0, 0.5, 1.0}), cfg, line), 0.0);
  EXPECT_THROW(mse(zero, cfg, LagDataset{}), EmptyDataError);
}

TEST(Mse, MatchesLoopOracleAndIsNonNegative) {
  std::mt19937_64 gen(17);
  for (int trial = 0; trial < 30; ++trial) {
    auto c = testing::random_grad_case(gen, kActs[trial % 3], kActs[(trial / 3) % 3]);
    const std::vector<double> flat(c.weights.flat().begin(), c.weights.flat().end());
    const double got = mse(c.weights, c.cfg, c.ds);
    EXPECT_GE(got, 0.0);
    EXPECT_NEAR(got, testing::oracle_loss(flat, c.cfg, c.ds), 1e-12);
  }
}

TEST(Gradient, MatchesFiniteDifferencesForAllPairings) {
  std::mt19937_64 gen(2024);
  int cases = 0;
  for (auto hidden : kActs) {
    for (auto output : kActs) {
      for (int rep = 0; rep < 4; ++rep) {
        auto c = testing::random_grad_case(gen, hidden, output);
        const auto analytic = gradient(c.weights, c.cfg, c.ds);
        const auto numeric = testing::finite_difference_gradient(
            {c.weights.flat().begin(), c.weights.flat().end()}, c.cfg, c.ds);
        for (std::size_t k = 0; k < numeric.size(); ++k) {
          EXPECT_TRUE(testing::close(analytic.flat()[k], numeric[k]))
              << c.cfg.label() << " " << to_string(hidden) << "/" << to_string(output)
              << " entry " << k << ": " << analytic.flat()[k] << " vs " << numeric[k];
        }
        ++cases;
      }
    }
  }
  EXPECT_GE(cases, 20);
}

TEST(Gradient, ZeroAtInterpolatingSolution) {
  const NetworkConfig cfg{1, 1, Activation::tanh, Activation::identity};
  const auto ds = embed_lags(std::vector<double>{0.3, 0.8}, 1);
  // output bias absorbs the target exactly
  NetworkWeights w(1, 1, {0.2, -0.4, 0.0, 0.7});
  w.out(0) = 0.8 - 0.7 * std::tanh(0.2 - 0.4 * 0.3);
  const auto g = gradient(w, cfg, ds);
  for (double v : g.flat()) EXPECT_NEAR(v, 0.0, 1e-15);
}

TEST(Gradient, LinearNetworkClosedForm) {
  // y = b + v * (c + u * x); E = (t - y)^2 on one row
  const NetworkConfig cfg{1, 1, Activation::identity, Activation::identity};
  const double c = 0.3, u = -0.7, b = 0.1, v = 1.9, x = 0.6, t = -1.2;
  const NetworkWeights w(1, 1, {c, u, b, v});
  const auto ds = LagDataset(1, {x}, {t}, {2});
  const double r = t - (b + v * (c + u * x));
  const auto g = gradient(w, cfg, ds);
  EXPECT_NEAR(g.in(0, 0), -2.0 * r * v, 1e-14);
  EXPECT_NEAR(g.in(0, 1), -2.0 * r * v * x, 1e-14);
  EXPECT_NEAR(g.out(0), -2.0 * r, 1e-14);
  EXPECT_NEAR(g.out(1), -2.0 * r * (c + u * x), 1e-14);
}

TEST(Gradient, LossMatchesMse) {
  std::mt19937_64 gen(8);
  auto c = testing::random_grad_case(gen, Activation::tanh, Activation::sigmoid);
  EXPECT_EQ(loss_and_gradient(c.weights, c.cfg, c.ds).loss, mse(c.weights, c.cfg, c.ds));
}

TEST(PredictSeries, CountsAndZeroWeights) {
  const auto seq = load_corpus();
  const NetworkConfig cfg{2, 4, Activation::tanh, Activation::identity};
  const auto preds = predict_series(NetworkWeights(2, 4), cfg, seq, Scaler::identity(),
                                    Scaler::identity());
  ASSERT_EQ(preds.size(), 238u);
  EXPECT_EQ(preds.front().t, 3u);
  EXPECT_EQ(preds.back().t, 240u);
  for (const auto& p : preds) {
    EXPECT_EQ(p.predicted, 0.0);
    EXPECT_EQ(p.observed, seq.at(p.t).value());
  }
  EXPECT_THROW(predict_series(NetworkWeights(2, 4), cfg, parse_sequence("1 2"),
                              Scaler::identity(), Scaler::identity()),
               InsufficientDataError);
}

TEST(PredictSeries, UsesObservedHistoryAndInverseScaling) {
  const auto seq = parse_sequence("0 5 -7 17 2");
  const NetworkConfig cfg{1, 1, Activation::identity, Activation::identity};
  // predicted scaled value equals the scaled input, so raw prediction = y_{t-1}
  const NetworkWeights echo(1, 1, {0.0, 1.0, 0.0, 1.0});
  const auto in = fit_scaler(std::vector<double>{-7, 17}, -1, 1);
  const auto preds = predict_series(echo, cfg, seq, in, in);
  ASSERT_EQ(preds.size(), 4u);
  const double expected[] = {0, 5, -7, 17};
  for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(preds[k].predicted, expected[k], 1e-12);
}

TEST(Table2, ReplayIsFinite) {
  const auto w = table2_weights();
  EXPECT_EQ(w.size(), 17u);
  EXPECT_EQ(w.in(3, 1), -3.818);
  EXPECT_EQ(w.out(2), 2.845);
  const NetworkConfig cfg{2, 4, Activation::tanh, Activation::identity};
  const auto scale = fit_scaler(std::vector<double>{-7, 17}, -1, 1);
  const auto preds = predict_series(w, cfg, load_corpus(), scale, scale);
  ASSERT_EQ(preds.size(), 238u);
  for (const auto& p : preds) EXPECT_TRUE(std::isfinite(p.predicted));
}

}  // namespace
}  // namespace raga
