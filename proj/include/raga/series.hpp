#pragma once

// Lag embedding, min-max scaling and contiguous hold-out splitting.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "raga/notation.hpp"

namespace raga {

/// Supervised pairs (y_{t-1}, ..., y_{t-p}) -> y_t in serial order.
/// Inputs are stored row-major, p values per row.
class LagDataset {
public:
  LagDataset() = default;
  LagDataset(std::size_t p, std::vector<double> inputs, std::vector<double> targets,
             std::vector<std::size_t> origin_indices);

  std::size_t lags() const noexcept { return p_; }
  std::size_t rows() const noexcept { return targets_.size(); }
  bool empty() const noexcept { return targets_.empty(); }

  std::span<const double> input(std::size_t row) const {
    return {inputs_.data() + row * p_, p_};
  }
  double target(std::size_t row) const { return targets_[row]; }
  /// 1-based serial number t of the target.
  std::size_t origin(std::size_t row) const { return origins_[row]; }

  const std::vector<double>& inputs() const noexcept { return inputs_; }
  const std::vector<double>& targets() const noexcept { return targets_; }
  const std::vector<std::size_t>& origins() const noexcept { return origins_; }

  /// Rows [first, first + count).
  LagDataset slice(std::size_t first, std::size_t count) const;

  friend bool operator==(const LagDataset&, const LagDataset&) = default;

private:
  std::size_t p_ = 0;
  std::vector<double> inputs_;
  std::vector<double> targets_;
  std::vector<std::size_t> origins_;
};

/// Throws InsufficientDataError unless size(seq) > p >= 1.
LagDataset embed_lags(const NoteSequence& seq, std::size_t p);
LagDataset embed_lags(std::span<const double> values, std::size_t p);

enum class ScalerKind { none, minmax };

std::string to_string(ScalerKind kind);
ScalerKind scaler_kind_from_string(const std::string& name);

/// Affine map from [src_min, src_max] onto [lo, hi]; identity for `none`.
struct Scaler {
  ScalerKind kind = ScalerKind::none;
  double lo = 0.0;
  double hi = 1.0;
  double src_min = 0.0;
  double src_max = 1.0;

  static Scaler identity() { return {}; }

  double apply(double x) const noexcept;
  double invert(double y) const noexcept;

  friend bool operator==(const Scaler&, const Scaler&) = default;
};

/// Throws EmptyDataError on empty input, InputError unless hi > lo, and
/// DegenerateScaleError for constant values.
Scaler fit_scaler(std::span<const double> values, double lo, double hi);

/// Applies `in` to every input and `out` to every target.
LagDataset scale_dataset(const LagDataset& ds, const Scaler& in, const Scaler& out);

struct SplitSpec {
  /// In [0, 1). The tail round(fraction * rows) rows become the hold-out.
  double holdout_fraction = 0.0;
};

struct SplitResult {
  LagDataset train;
  LagDataset holdout;
};

/// Throws SplitError when the training part would be empty.
SplitResult split(const LagDataset& ds, const SplitSpec& spec);

}  // namespace raga
