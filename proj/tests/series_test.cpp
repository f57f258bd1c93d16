#include "raga/series.hpp"

#include <gtest/gtest.h>

#include <random>

#include "raga/error.hpp"

namespace raga {
namespace {

TEST(EmbedLags, UnrollsDefinition) {
  const std::vector<double> values{1, 2, 3, 4};
  const auto ds = embed_lags(values, 2);
  ASSERT_EQ(ds.rows(), 2u);
  EXPECT_EQ(std::vector<double>(ds.input(0).begin(), ds.input(0).end()),
            (std::vector<double>{2, 1}));
  EXPECT_EQ(ds.target(0), 3);
  EXPECT_EQ(std::vector<double>(ds.input(1).begin(), ds.input(1).end()),
            (std::vector<double>{3, 2}));
  EXPECT_EQ(ds.target(1), 4);
  EXPECT_EQ(ds.origins(), (std::vector<std::size_t>{3, 4}));
}

TEST(EmbedLags, CorpusRowCount) {
  EXPECT_EQ(embed_lags(load_corpus(), 2).rows(), 238u);
  EXPECT_EQ(embed_lags(load_corpus(), 5).rows(), 235u);
}

TEST(EmbedLags, InsufficientData) {
  EXPECT_THROW(embed_lags(parse_sequence("5"), 1), InsufficientDataError);
  EXPECT_THROW(embed_lags(parse_sequence("1 2 3"), 0), InsufficientDataError);
  EXPECT_THROW(embed_lags(parse_sequence("1 2 3"), 3), InsufficientDataError);
}

TEST(EmbedLags, RowsIndexSourceAndReconstruct) {
  const auto seq = load_corpus();
  const auto src = seq.as_reals();
  for (std::size_t p = 1; p <= 5; ++p) {
    const auto ds = embed_lags(seq, p);
    ASSERT_EQ(ds.rows(), src.size() - p);
    for (std::size_t r = 0; r < ds.rows(); ++r) {
      const std::size_t t = ds.origin(r);
      for (std::size_t i = 1; i <= p; ++i) EXPECT_EQ(ds.input(r)[i - 1], src[t - i - 1]);
    }
    std::vector<double> rebuilt(ds.input(0).rbegin(), ds.input(0).rend());
    rebuilt.insert(rebuilt.end(), ds.targets().begin(), ds.targets().end());
    EXPECT_EQ(rebuilt, src);
  }
}

TEST(Scaler, EndpointsAndMidpoint) {
  const std::vector<double> v{-7, 17};
  const auto s = fit_scaler(v, -1, 1);
  EXPECT_DOUBLE_EQ(s.apply(-7), -1.0);
  EXPECT_DOUBLE_EQ(s.apply(17), 1.0);
  EXPECT_DOUBLE_EQ(s.apply(5), 0.0);
}

TEST(Scaler, Errors) {
  const std::vector<double> constant{3, 3, 3};
  EXPECT_THROW(fit_scaler(constant, -1, 1), DegenerateScaleError);
  EXPECT_THROW(fit_scaler(std::vector<double>{}, -1, 1), EmptyDataError);
  EXPECT_THROW(fit_scaler(std::vector<double>{0, 1}, 1, 1), InputError);
}

TEST(Scaler, RoundTripOnRandomValues) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> x(-7.0, 17.0);
  const auto s = fit_scaler(std::vector<double>{-7, 17}, 0, 1);
  for (int k = 0; k < 1000; ++k) {
    const double v = x(gen);
    EXPECT_NEAR(s.invert(s.apply(v)), v, 1e-12);
  }
  const auto id = Scaler::identity();
  EXPECT_EQ(id.apply(4.5), 4.5);
  EXPECT_EQ(id.invert(-2.0), -2.0);
}

TEST(Split, Sizes) {
  const auto ds = embed_lags(load_corpus(), 2);
  auto whole = split(ds, {0.0});
  EXPECT_EQ(whole.train.rows(), 238u);
  EXPECT_EQ(whole.holdout.rows(), 0u);

  auto tenth = split(ds, {0.1});
  EXPECT_EQ(tenth.train.rows(), 214u);
  EXPECT_EQ(tenth.holdout.rows(), 24u);

  const std::vector<double> ten(12, 0.0);
  EXPECT_THROW(split(embed_lags(ten, 2), {0.99}), SplitError);
  EXPECT_THROW(split(ds, {1.0}), SplitError);
  EXPECT_THROW(split(ds, {-0.1}), SplitError);
}

TEST(Split, PreservesRowsInOrder) {
  const auto ds = embed_lags(load_corpus(), 3);
  for (double f : {0.0, 0.05, 0.25, 0.5, 0.9}) {
    const auto parts = split(ds, {f});
    EXPECT_EQ(parts.train.rows() + parts.holdout.rows(), ds.rows());
    std::vector<double> targets = parts.train.targets();
    targets.insert(targets.end(), parts.holdout.targets().begin(), parts.holdout.targets().end());
    EXPECT_EQ(targets, ds.targets());
    std::vector<double> inputs = parts.train.inputs();
    inputs.insert(inputs.end(), parts.holdout.inputs().begin(), parts.holdout.inputs().end());
    EXPECT_EQ(inputs, ds.inputs());
  }
}

TEST(ScaleDataset, AppliesSeparateScalers) {
  const auto ds = embed_lags(std::vector<double>{-7, 5, 17}, 1);
  const auto in = fit_scaler(std::vector<double>{-7, 17}, -1, 1);
  const auto out = fit_scaler(std::vector<double>{-7, 17}, 0, 1);
  const auto scaled = scale_dataset(ds, in, out);
  EXPECT_DOUBLE_EQ(scaled.input(0)[0], -1.0);
  EXPECT_DOUBLE_EQ(scaled.target(0), 0.5);
  EXPECT_DOUBLE_EQ(scaled.input(1)[0], 0.0);
  EXPECT_DOUBLE_EQ(scaled.target(1), 1.0);
  EXPECT_EQ(scaled.origins(), ds.origins());
}

}  // namespace
}  // namespace raga
