#pragma once

// Residual metrics, the fit-and-evaluate pipeline and architecture sweeps.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "raga/model_io.hpp"
#include "raga/network.hpp"
#include "raga/notation.hpp"
#include "raga/series.hpp"
#include "raga/training.hpp"

namespace raga {

/// observed - predicted, in prediction order. Throws EmptyDataError.
std::vector<double> residuals(std::span<const Prediction> preds);
/// Mean absolute residual. Throws EmptyDataError.
double mae(std::span<const double> e);
/// Root mean squared residual. Throws EmptyDataError.
double rmse(std::span<const double> e);

struct MetricPair {
  double rmse = 0.0;
  double mae = 0.0;
};

MetricPair metrics(std::span<const Prediction> preds);

/// Min-max intervals: inputs to [-1, 1]; targets to [0, 1] under a sigmoid
/// output and to [-1, 1] otherwise. `none` leaves values raw.
struct ScalingSpec {
  ScalerKind kind = ScalerKind::minmax;
};

/// Target interval used for a given output activation.
std::pair<double, double> target_interval(Activation output);

struct FitResult {
  Model model;
  TrainReport report;
  /// Predictions on the evaluation rows: every row when there is no
  /// hold-out, otherwise only the hold-out tail.
  std::vector<Prediction> evaluation;
  MetricPair metrics;
};

/// Embeds, splits, scales on the training rows, trains and evaluates in raw
/// pitch units.
FitResult fit_and_evaluate(const NetworkConfig& net_cfg, const TrainConfig& train_cfg,
                           const NoteSequence& seq, const ScalingSpec& scaling,
                           const SplitSpec& split_spec);

struct GridEntry {
  std::size_t row = 0;  // 1-based row number for reports
  NetworkConfig net;
  TrainConfig train;
  std::string note;
  /// Values printed in the original results table, when known.
  std::optional<MetricPair> reported;
};

/// The 38 configurations of the original results table, in row order, each
/// with default TrainConfig. Mislabelled rows carry a note.
std::vector<GridEntry> table1c_grid();

/// `p,q,hidden_act,output_act` lines; header and '#' comments allowed.
/// Throws InputError on an empty grid or a malformed line.
std::vector<GridEntry> parse_grid(std::istream& in, const TrainConfig& defaults);

struct SweepCell {
  GridEntry entry;
  NetworkConfig net_cfg;
  MetricPair metrics;
  std::size_t parameter_count = 0;
  double train_seconds = 0.0;
  std::uint64_t seed = 0;
  bool diverged = false;
};

struct SweepReport {
  std::vector<SweepCell> cells;
  std::size_t best = 0;
};

struct SweepOptions {
  std::uint64_t base_seed = 0;
  /// OpenMP threads for the cell loop; 0 keeps the runtime default.
  int jobs = 0;
};

/// Cell k trains with seed base_seed ^ k. Cells run in an OpenMP parallel
/// loop; run_sweep_serial is the reference. Throws SweepError when every
/// cell diverges.
SweepReport run_sweep(const std::vector<GridEntry>& grid, const NoteSequence& seq,
                      const ScalingSpec& scaling, const SplitSpec& split_spec,
                      const SweepOptions& options);
SweepReport run_sweep_serial(const std::vector<GridEntry>& grid, const NoteSequence& seq,
                             const ScalingSpec& scaling, const SplitSpec& split_spec,
                             const SweepOptions& options);

/// Lowest RMSE, then fewest parameters, then lowest MAE, then earliest.
/// Diverged cells never win. Throws SweepError when none is eligible.
std::size_t select_best(std::span<const SweepCell> cells);

/// Header `row,label,p,q,hidden_act,output_act,rmse,mae,params,seconds,seed,note`.
/// Reals use 6 significant digits. Without `include_timing` the seconds
/// column is written as 0 so that the file is reproducible.
void write_sweep_csv(std::ostream& out, const SweepReport& report, bool include_timing = false);

}  // namespace raga
