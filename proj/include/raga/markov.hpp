#pragma once

// First-order pitch transition model for simulating raga note sequences.

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "raga/notation.hpp"

namespace raga {

class TransitionMatrix {
public:
  /// From pair counts. Rows without outgoing pairs become absorbing
  /// (self-loop with probability 1) and are flagged.
  TransitionMatrix(std::vector<int> alphabet, std::vector<std::vector<std::size_t>> counts);
  /// From explicit probabilities; each row must be a distribution.
  static TransitionMatrix from_probabilities(std::vector<int> alphabet,
                                             std::vector<std::vector<double>> probs);

  const std::vector<int>& alphabet() const noexcept { return alphabet_; }
  std::size_t states() const noexcept { return alphabet_.size(); }
  const std::vector<std::vector<double>>& probs() const noexcept { return probs_; }
  /// Empty when built from probabilities.
  const std::vector<std::vector<std::size_t>>& counts() const noexcept { return counts_; }
  const std::vector<bool>& absorbing() const noexcept { return absorbing_; }

  /// Index of `value` in the alphabet. Throws UnknownStateError.
  std::size_t index_of(int value) const;

private:
  TransitionMatrix() = default;

  std::vector<int> alphabet_;
  std::vector<std::vector<double>> probs_;
  std::vector<std::vector<std::size_t>> counts_;
  std::vector<bool> absorbing_;
};

/// Throws InsufficientDataError for fewer than two notes.
TransitionMatrix estimate_transitions(const NoteSequence& seq);

/// Inverse-CDF sampling over each row in alphabet order, driven by the
/// pinned Rng. Throws UnknownStateError when `start` is not a state.
NoteSequence simulate(const TransitionMatrix& tm, int start, std::size_t length,
                      std::uint64_t seed);

struct StationaryReport {
  /// L1 distance per state; NaN for states `sample` never leaves.
  std::vector<double> per_state;
  double max_distance = 0.0;
};

/// Compares next-note frequencies observed in `sample` with the matrix rows.
StationaryReport stationary_check(const TransitionMatrix& tm, const NoteSequence& sample);

/// Header row of alphabet values, then one row per state with 6 significant
/// digit probabilities.
void write_matrix_csv(std::ostream& out, const TransitionMatrix& tm);

}  // namespace raga
