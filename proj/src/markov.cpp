#include "raga/markov.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "raga/error.hpp"
#include "raga/rng.hpp"

namespace raga {

TransitionMatrix::TransitionMatrix(std::vector<int> alphabet,
                                   std::vector<std::vector<std::size_t>> counts)
    : alphabet_(std::move(alphabet)), counts_(std::move(counts)) {
  const std::size_t k = alphabet_.size();
  if (counts_.size() != k) throw ShapeError("count matrix does not match alphabet");
  probs_.assign(k, std::vector<double>(k, 0.0));
  absorbing_.assign(k, false);
  for (std::size_t a = 0; a < k; ++a) {
    if (counts_[a].size() != k) throw ShapeError("count matrix row has wrong length");
    std::size_t total = 0;
    for (auto c : counts_[a]) total += c;
    if (total == 0) {
      absorbing_[a] = true;
      probs_[a][a] = 1.0;
      continue;
    }
    for (std::size_t b = 0; b < k; ++b) {
      probs_[a][b] = static_cast<double>(counts_[a][b]) / static_cast<double>(total);
    }
  }
}

TransitionMatrix TransitionMatrix::from_probabilities(std::vector<int> alphabet,
                                                      std::vector<std::vector<double>> probs) {
  const std::size_t k = alphabet.size();
  if (probs.size() != k) throw ShapeError("probability matrix does not match alphabet");
  for (const auto& row : probs) {
    if (row.size() != k) throw ShapeError("probability row has wrong length");
    double sum = 0.0;
    for (double v : row) {
      if (!(v >= 0.0)) throw InputError("transition probabilities must be non-negative");
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw InputError("transition row does not sum to 1");
  }
  TransitionMatrix tm;
  tm.alphabet_ = std::move(alphabet);
  tm.probs_ = std::move(probs);
  tm.absorbing_.assign(k, false);
  return tm;
}

std::size_t TransitionMatrix::index_of(int value) const {
  auto it = std::lower_bound(alphabet_.begin(), alphabet_.end(), value);
  if (it == alphabet_.end() || *it != value) {
    throw UnknownStateError("pitch " + std::to_string(value) + " is not a state of the chain");
  }
  return static_cast<std::size_t>(it - alphabet_.begin());
}

TransitionMatrix estimate_transitions(const NoteSequence& seq) {
  if (seq.size() < 2) throw InsufficientDataError("need at least two notes to count transitions");
  std::vector<int> values = seq.values();
  std::vector<int> alphabet = values;
  std::sort(alphabet.begin(), alphabet.end());
  alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());

  auto index = [&](int v) {
    return static_cast<std::size_t>(std::lower_bound(alphabet.begin(), alphabet.end(), v) -
                                    alphabet.begin());
  };
  std::vector<std::vector<std::size_t>> counts(alphabet.size(),
                                               std::vector<std::size_t>(alphabet.size(), 0));
  for (std::size_t k = 1; k < values.size(); ++k) ++counts[index(values[k - 1])][index(values[k])];
  return TransitionMatrix(std::move(alphabet), std::move(counts));
}

NoteSequence simulate(const TransitionMatrix& tm, int start, std::size_t length,
                      std::uint64_t seed) {
  std::size_t state = tm.index_of(start);
  Rng rng(seed);
  std::vector<PitchValue> notes;
  notes.reserve(length);
  if (length == 0) return NoteSequence(std::move(notes));
  notes.emplace_back(start);
  for (std::size_t k = 1; k < length; ++k) {
    const auto& row = tm.probs()[state];
    const double u = rng.uniform();
    double cumulative = 0.0;
    std::size_t next = row.size();
    std::size_t last_positive = state;
    for (std::size_t b = 0; b < row.size(); ++b) {
      if (row[b] <= 0.0) continue;
      last_positive = b;
      cumulative += row[b];
      if (u < cumulative) {
        next = b;
        break;
      }
    }
    // rounding can leave the cumulative sum just under 1
    state = next == row.size() ? last_positive : next;
    notes.emplace_back(tm.alphabet()[state]);
  }
  return NoteSequence(std::move(notes));
}

StationaryReport stationary_check(const TransitionMatrix& tm, const NoteSequence& sample) {
  if (sample.size() < 2) throw InsufficientDataError("need at least two notes to compare");
  const std::size_t k = tm.states();
  std::vector<std::vector<std::size_t>> seen(k, std::vector<std::size_t>(k, 0));
  const auto values = sample.values();
  for (std::size_t i = 1; i < values.size(); ++i) {
    ++seen[tm.index_of(values[i - 1])][tm.index_of(values[i])];
  }
  StationaryReport report;
  report.per_state.assign(k, std::numeric_limits<double>::quiet_NaN());
  for (std::size_t a = 0; a < k; ++a) {
    std::size_t total = 0;
    for (auto c : seen[a]) total += c;
    if (total == 0) continue;
    double distance = 0.0;
    for (std::size_t b = 0; b < k; ++b) {
      const double freq = static_cast<double>(seen[a][b]) / static_cast<double>(total);
      distance += std::abs(freq - tm.probs()[a][b]);
    }
    report.per_state[a] = distance;
    report.max_distance = std::max(report.max_distance, distance);
  }
  return report;
}

void write_matrix_csv(std::ostream& out, const TransitionMatrix& tm) {
  out << "state";
  for (int v : tm.alphabet()) out << ',' << v;
  out << '\n';
  char buf[32];
  for (std::size_t a = 0; a < tm.states(); ++a) {
    out << tm.alphabet()[a];
    for (double p : tm.probs()[a]) {
      std::snprintf(buf, sizeof buf, "%.6g", p);
      out << ',' << buf;
    }
    out << '\n';
  }
}

}  // namespace raga
