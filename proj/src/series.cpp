#include "raga/series.hpp"

#include <algorithm>
#include <cmath>

#include "raga/error.hpp"

namespace raga {

LagDataset::LagDataset(std::size_t p, std::vector<double> inputs, std::vector<double> targets,
                       std::vector<std::size_t> origin_indices)
    : p_(p),
      inputs_(std::move(inputs)),
      targets_(std::move(targets)),
      origins_(std::move(origin_indices)) {
  if (inputs_.size() != p_ * targets_.size() || origins_.size() != targets_.size()) {
    throw ShapeError("lag dataset arrays disagree on row count");
  }
}

LagDataset LagDataset::slice(std::size_t first, std::size_t count) const {
  if (first + count > rows()) throw ShapeError("slice exceeds dataset rows");
  auto in_begin = inputs_.begin() + static_cast<std::ptrdiff_t>(first * p_);
  auto t_begin = targets_.begin() + static_cast<std::ptrdiff_t>(first);
  auto o_begin = origins_.begin() + static_cast<std::ptrdiff_t>(first);
  auto n = static_cast<std::ptrdiff_t>(count);
  return LagDataset(p_, {in_begin, in_begin + n * static_cast<std::ptrdiff_t>(p_)},
                    {t_begin, t_begin + n}, {o_begin, o_begin + n});
}

LagDataset embed_lags(std::span<const double> values, std::size_t p) {
  if (p < 1) throw InsufficientDataError("lag order p must be at least 1");
  if (values.size() <= p) {
    throw InsufficientDataError("sequence of length " + std::to_string(values.size()) +
                                " has no targets for p=" + std::to_string(p));
  }
  const std::size_t rows = values.size() - p;
  std::vector<double> inputs;
  std::vector<double> targets;
  std::vector<std::size_t> origins;
  inputs.reserve(rows * p);
  targets.reserve(rows);
  origins.reserve(rows);
  // index k is 0-based, so t = k + 1; input i (1..p) is y_{t-i} = values[k - i]
  for (std::size_t k = p; k < values.size(); ++k) {
    for (std::size_t i = 1; i <= p; ++i) inputs.push_back(values[k - i]);
    targets.push_back(values[k]);
    origins.push_back(k + 1);
  }
  return LagDataset(p, std::move(inputs), std::move(targets), std::move(origins));
}

LagDataset embed_lags(const NoteSequence& seq, std::size_t p) {
  auto values = seq.as_reals();
  return embed_lags(values, p);
}

std::string to_string(ScalerKind kind) { return kind == ScalerKind::none ? "none" : "minmax"; }

ScalerKind scaler_kind_from_string(const std::string& name) {
  if (name == "none") return ScalerKind::none;
  if (name == "minmax") return ScalerKind::minmax;
  throw InputError("unknown scaling '" + name + "' (expected none|minmax)");
}

double Scaler::apply(double x) const noexcept {
  if (kind == ScalerKind::none) return x;
  return lo + (x - src_min) * (hi - lo) / (src_max - src_min);
}

double Scaler::invert(double y) const noexcept {
  if (kind == ScalerKind::none) return y;
  return src_min + (y - lo) * (src_max - src_min) / (hi - lo);
}

Scaler fit_scaler(std::span<const double> values, double lo, double hi) {
  if (values.empty()) throw EmptyDataError("cannot fit a scaler to no values");
  if (!(hi > lo)) throw InputError("scaler target interval needs hi > lo");
  auto [mn, mx] = std::minmax_element(values.begin(), values.end());
  if (!(*mx > *mn)) {
    throw DegenerateScaleError("all values equal " + std::to_string(*mn) +
                               "; min-max scaling is undefined");
  }
  return Scaler{ScalerKind::minmax, lo, hi, *mn, *mx};
}

LagDataset scale_dataset(const LagDataset& ds, const Scaler& in, const Scaler& out) {
  std::vector<double> inputs = ds.inputs();
  std::vector<double> targets = ds.targets();
  for (auto& x : inputs) x = in.apply(x);
  for (auto& y : targets) y = out.apply(y);
  return LagDataset(ds.lags(), std::move(inputs), std::move(targets), ds.origins());
}

SplitResult split(const LagDataset& ds, const SplitSpec& spec) {
  if (!(spec.holdout_fraction >= 0.0 && spec.holdout_fraction < 1.0)) {
    throw SplitError("holdout fraction must lie in [0, 1)");
  }
  auto holdout = static_cast<std::size_t>(
      std::llround(spec.holdout_fraction * static_cast<double>(ds.rows())));
  if (holdout >= ds.rows()) {
    throw SplitError("holdout fraction " + std::to_string(spec.holdout_fraction) +
                     " leaves no training rows out of " + std::to_string(ds.rows()));
  }
  std::size_t train = ds.rows() - holdout;
  return {ds.slice(0, train), ds.slice(train, holdout)};
}

}  // namespace raga
