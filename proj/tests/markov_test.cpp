#include "raga/markov.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "raga/error.hpp"

namespace raga {
namespace {

TEST(Estimate, HandCountedPairs) {
  const auto tm = estimate_transitions(parse_sequence("0 1 0 1"));
  EXPECT_EQ(tm.alphabet(), (std::vector<int>{0, 1}));
  EXPECT_EQ(tm.counts(), (std::vector<std::vector<std::size_t>>{{0, 2}, {1, 0}}));
  EXPECT_EQ(tm.probs(), (std::vector<std::vector<double>>{{0, 1}, {1, 0}}));
}

TEST(Estimate, SelfLoop) {
  const auto tm = estimate_transitions(parse_sequence("5 5"));
  EXPECT_EQ(tm.probs(), (std::vector<std::vector<double>>{{1.0}}));
  EXPECT_FALSE(tm.absorbing()[0]);
}

TEST(Estimate, AbsorbingFinalState) {
  const auto tm = estimate_transitions(parse_sequence("0 2 3"));
  ASSERT_EQ(tm.states(), 3u);
  EXPECT_TRUE(tm.absorbing()[2]);
  EXPECT_EQ(tm.probs()[2][2], 1.0);
  const auto walk = simulate(tm, 0, 6, 1);
  EXPECT_EQ(walk.values(), (std::vector<int>{0, 2, 3, 3, 3, 3}));
}

TEST(Estimate, CorpusAlphabetAndConservation) {
  const auto corpus = load_corpus();
  const auto tm = estimate_transitions(corpus);
  EXPECT_EQ(tm.alphabet(),
            (std::vector<int>{-7, -3, -2, 0, 2, 3, 5, 7, 9, 10, 12, 14, 15, 17}));
  std::size_t total = 0;
  for (std::size_t a = 0; a < tm.states(); ++a) {
    EXPECT_FALSE(tm.absorbing()[a]);
    double sum = 0.0;
    for (std::size_t b = 0; b < tm.states(); ++b) {
      total += tm.counts()[a][b];
      sum += tm.probs()[a][b];
    }
    EXPECT_NEAR(sum, 1.0, 1e-12);
  }
  EXPECT_EQ(total, corpus.size() - 1);
}

TEST(Estimate, NeedsTwoNotes) {
  EXPECT_THROW(estimate_transitions(parse_sequence("0")), InsufficientDataError);
  EXPECT_THROW(estimate_transitions(NoteSequence{}), InsufficientDataError);
}

TEST(Simulate, DeterministicChain) {
  const auto tm = TransitionMatrix::from_probabilities({0, 1}, {{0, 1}, {1, 0}});
  EXPECT_EQ(simulate(tm, 0, 5, 123).values(), (std::vector<int>{0, 1, 0, 1, 0}));
  EXPECT_THROW(simulate(tm, 99, 5, 1), UnknownStateError);
  EXPECT_THROW(TransitionMatrix::from_probabilities({0, 1}, {{0.5, 0.4}, {1, 0}}), InputError);
}

TEST(Simulate, ReproducibleAndClosed) {
  const auto tm = estimate_transitions(load_corpus());
  const auto a = simulate(tm, 0, 240, 5);
  EXPECT_EQ(a, simulate(tm, 0, 240, 5));
  EXPECT_NE(a, simulate(tm, 0, 240, 6));
  EXPECT_EQ(a.size(), 240u);
  EXPECT_EQ(a.at(1).value(), 0);
  const std::set<int> alphabet(tm.alphabet().begin(), tm.alphabet().end());
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto walk = simulate(tm, tm.alphabet()[seed % tm.states()], 1000, seed);
    for (auto v : walk.notes()) EXPECT_TRUE(alphabet.contains(v.value()));
    EXPECT_EQ(validate_against_raga(walk, bageshree_profile()).vivadi_count, 0u);
  }
}

TEST(Simulate, OnlyObservedTransitions) {
  const auto tm = estimate_transitions(load_corpus());
  const auto walk = simulate(tm, 0, 5000, 31).values();
  for (std::size_t k = 1; k < walk.size(); ++k) {
    EXPECT_GT(tm.counts()[tm.index_of(walk[k - 1])][tm.index_of(walk[k])], 0u);
  }
}

TEST(StationaryCheck, ExactOnTrainingData) {
  const auto corpus = load_corpus();
  const auto tm = estimate_transitions(corpus);
  EXPECT_EQ(stationary_check(tm, corpus).max_distance, 0.0);

  const auto det = TransitionMatrix::from_probabilities({0, 1}, {{0, 1}, {1, 0}});
  EXPECT_EQ(stationary_check(det, simulate(det, 1, 1000, 0)).max_distance, 0.0);
  EXPECT_THROW(stationary_check(tm, parse_sequence("0")), InsufficientDataError);
  EXPECT_THROW(stationary_check(tm, parse_sequence("0 1")), UnknownStateError);
}

TEST(StationaryCheck, LongSimulationConverges) {
  const auto tm = estimate_transitions(load_corpus());
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto report = stationary_check(tm, simulate(tm, 0, 100000, seed));
    EXPECT_LE(report.max_distance, 0.05) << "seed " << seed;
  }
}

TEST(MatrixCsv, HeaderAndRows) {
  const auto tm = estimate_transitions(parse_sequence("0 2 0 0"));
  std::ostringstream out;
  write_matrix_csv(out, tm);
  EXPECT_EQ(out.str(), "state,0,2\n0,0.5,0.5\n2,1,0\n");
}

}  // namespace
}  // namespace raga
