#include "raga/selection.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "raga/error.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace raga {

std::vector<double> residuals(std::span<const Prediction> preds) {
  if (preds.empty()) throw EmptyDataError("no predictions to compare");
  std::vector<double> e;
  e.reserve(preds.size());
  for (const auto& p : preds) e.push_back(p.observed - p.predicted);
  return e;
}

double mae(std::span<const double> e) {
  if (e.empty()) throw EmptyDataError("mae of an empty residual vector");
  double sum = 0.0;
  for (double v : e) sum += std::abs(v);
  return sum / static_cast<double>(e.size());
}

double rmse(std::span<const double> e) {
  if (e.empty()) throw EmptyDataError("rmse of an empty residual vector");
  double sum = 0.0;
  for (double v : e) sum += v * v;
  return std::sqrt(sum / static_cast<double>(e.size()));
}

MetricPair metrics(std::span<const Prediction> preds) {
  const auto e = residuals(preds);
  return {rmse(e), mae(e)};
}

std::pair<double, double> target_interval(Activation output) {
  if (output == Activation::sigmoid) return {0.0, 1.0};
  return {-1.0, 1.0};
}

FitResult fit_and_evaluate(const NetworkConfig& net_cfg, const TrainConfig& train_cfg,
                           const NoteSequence& seq, const ScalingSpec& scaling,
                           const SplitSpec& split_spec) {
  net_cfg.check();
  train_cfg.check();
  const LagDataset raw = embed_lags(seq, net_cfg.p);
  const SplitResult parts = split(raw, split_spec);

  Scaler scaler_in = Scaler::identity();
  Scaler scaler_out = Scaler::identity();
  if (scaling.kind == ScalerKind::minmax) {
    // every raw value the training rows touch
    std::vector<double> seen = parts.train.inputs();
    seen.insert(seen.end(), parts.train.targets().begin(), parts.train.targets().end());
    scaler_in = fit_scaler(seen, -1.0, 1.0);
    auto [lo, hi] = target_interval(net_cfg.output);
    scaler_out = fit_scaler(seen, lo, hi);
  }

  FitResult result;
  result.report = train(net_cfg, train_cfg, scale_dataset(parts.train, scaler_in, scaler_out));

  auto all = predict_series(result.report.final_weights, net_cfg, seq, scaler_in, scaler_out);
  if (parts.holdout.empty()) {
    result.evaluation = std::move(all);
  } else {
    result.evaluation.assign(all.end() - static_cast<std::ptrdiff_t>(parts.holdout.rows()),
                             all.end());
  }
  result.metrics = metrics(result.evaluation);

  result.model.config = net_cfg;
  result.model.weights = result.report.final_weights;
  result.model.scaler_in = scaler_in;
  result.model.scaler_out = scaler_out;
  result.model.metadata = {result.report.best_restart_seed, result.report.epochs_run,
                           result.metrics.rmse};
  return result;
}

std::vector<GridEntry> table1c_grid() {
  using A = Activation;
  struct Row {
    std::size_t p, q;
    A hidden, output;
    double rmse, mae;
    const char* note;
  };
  // p, q (from the hidden-units column), hidden ("input") activation, output activation
  static const Row rows[] = {
      {1, 1, A::tanh, A::identity, 3.895, 3.255, ""},
      {1, 2, A::tanh, A::tanh, 3.708, 3.034, ""},
      {1, 3, A::tanh, A::tanh, 2.725, 2.258, ""},
      {1, 4, A::tanh, A::tanh, 2.629, 2.202, ""},
      {1, 5, A::tanh, A::tanh, 2.627, 2.205, ""},
      {1, 4, A::tanh, A::identity, 2.917, 2.407, ""},
      {2, 4, A::tanh, A::identity, 2.595, 2.172, ""},
      {2, 4, A::tanh, A::tanh, 3.089, 2.498, ""},
      {2, 5, A::tanh, A::identity, 3.081, 2.455, ""},
      {2, 4, A::sigmoid, A::identity, 2.521, 2.071, ""},
      {2, 5, A::tanh, A::sigmoid, 2.643, 2.191,
       "printed label N^{2-4-1} but 5 hidden units; q taken from the units column"},
      {3, 1, A::tanh, A::identity, 2.701, 2.134, ""},
      {3, 2, A::tanh, A::identity, 2.658, 2.152, ""},
      {3, 3, A::tanh, A::identity, 2.561, 2.137, ""},
      {3, 4, A::tanh, A::identity, 2.656, 2.195, ""},
      {3, 4, A::sigmoid, A::identity, 2.699, 2.171, ""},
      {3, 4, A::tanh, A::tanh, 2.654, 2.165, ""},
      {3, 4, A::tanh, A::sigmoid, 2.772, 2.205, ""},
      {3, 3, A::tanh, A::sigmoid, 2.616, 2.129, ""},
      {3, 3, A::sigmoid, A::identity, 2.564, 2.147, ""},
      {4, 3, A::tanh, A::identity, 2.717, 2.247, ""},
      {4, 3, A::tanh, A::tanh, 2.681, 2.199, ""},
      {4, 3, A::tanh, A::sigmoid, 2.787, 2.243, ""},
      {4, 4, A::sigmoid, A::identity, 2.753, 2.25,
       "same configuration as row 26 but different printed metrics"},
      {4, 3, A::sigmoid, A::identity, 2.606, 2.154, ""},
      {4, 4, A::sigmoid, A::identity, 2.626, 2.158,
       "same configuration as row 24 but different printed metrics"},
      {4, 5, A::sigmoid, A::identity, 2.710, 2.183, ""},
      {4, 5, A::tanh, A::sigmoid, 2.789, 2.249, ""},
      {4, 6, A::sigmoid, A::identity, 2.583, 2.148, ""},
      {5, 4, A::tanh, A::identity, 2.943, 2.421, ""},
      {5, 4, A::sigmoid, A::identity, 2.874, 2.377, ""},
      {5, 5, A::tanh, A::identity, 2.767, 2.173, ""},
      {5, 4, A::tanh, A::tanh, 2.917, 2.331, ""},
      {5, 6, A::tanh, A::identity, 2.664, 2.17, ""},
      {5, 7, A::tanh, A::identity, 2.587, 2.161, ""},
      {5, 6, A::tanh, A::sigmoid, 2.713, 2.154, ""},
      {5, 5, A::tanh, A::sigmoid, 2.724, 2.199, ""},
      {5, 6, A::sigmoid, A::tanh, 2.703, 2.166, ""},
  };
  std::vector<GridEntry> grid;
  grid.reserve(std::size(rows));
  for (std::size_t k = 0; k < std::size(rows); ++k) {
    const Row& r = rows[k];
    grid.push_back({k + 1, {r.p, r.q, r.hidden, r.output}, TrainConfig{}, r.note,
                    MetricPair{r.rmse, r.mae}});
  }
  return grid;
}

std::vector<GridEntry> parse_grid(std::istream& in, const TrainConfig& defaults) {
  std::vector<GridEntry> grid;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    for (char& c : line) {
      if (c == ',') c = ' ';
    }
    std::istringstream fields(line);
    std::string p_text, q_text, hidden, output;
    if (!(fields >> p_text)) continue;
    if (grid.empty() && p_text == "p") continue;  // header
    if (!(fields >> q_text >> hidden >> output)) {
      throw ParseError(line, line_no, "grid lines need p,q,hidden_act,output_act");
    }
    NetworkConfig cfg;
    try {
      std::size_t used = 0;
      const long p = std::stol(p_text, &used);
      if (used != p_text.size()) throw std::invalid_argument(p_text);
      const long q = std::stol(q_text, &used);
      if (used != q_text.size()) throw std::invalid_argument(q_text);
      if (p < 1 || q < 1) throw InputError("grid line " + std::to_string(line_no) +
                                           ": p and q must be at least 1");
      cfg = {static_cast<std::size_t>(p), static_cast<std::size_t>(q),
             activation_from_string(hidden), activation_from_string(output)};
    } catch (const std::logic_error&) {
      throw ParseError(line, line_no, "p and q must be integers");
    }
    grid.push_back({grid.size() + 1, cfg, defaults, "", std::nullopt});
  }
  if (grid.empty()) throw InputError("grid file contains no configurations");
  return grid;
}

std::size_t select_best(std::span<const SweepCell> cells) {
  std::optional<std::size_t> best;
  auto better = [&](const SweepCell& a, const SweepCell& b) {
    if (a.metrics.rmse != b.metrics.rmse) return a.metrics.rmse < b.metrics.rmse;
    if (a.parameter_count != b.parameter_count) return a.parameter_count < b.parameter_count;
    return a.metrics.mae < b.metrics.mae;
  };
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (cells[k].diverged) continue;
    if (!best || better(cells[k], cells[*best])) best = k;
  }
  if (!best) throw SweepError("every sweep cell diverged");
  return *best;
}

namespace {

SweepCell run_cell(const GridEntry& entry, std::size_t index, const NoteSequence& seq,
                   const ScalingSpec& scaling, const SplitSpec& split_spec,
                   std::uint64_t base_seed) {
  SweepCell cell;
  cell.entry = entry;
  cell.net_cfg = entry.net;
  cell.parameter_count = entry.net.parameter_count();
  cell.seed = base_seed ^ static_cast<std::uint64_t>(index);
  TrainConfig tc = entry.train;
  tc.seed = cell.seed;
  const auto start = std::chrono::steady_clock::now();
  try {
    cell.metrics = fit_and_evaluate(entry.net, tc, seq, scaling, split_spec).metrics;
  } catch (const DivergenceError&) {
    cell.diverged = true;
    cell.metrics = {std::numeric_limits<double>::quiet_NaN(),
                    std::numeric_limits<double>::quiet_NaN()};
  }
  cell.train_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return cell;
}

void check_grid(const std::vector<GridEntry>& grid, const NoteSequence& seq,
                const ScalingSpec& scaling, const SplitSpec& split_spec) {
  if (grid.empty()) throw InputError("sweep grid is empty");
  // surface input errors before entering the parallel region
  for (const auto& entry : grid) {
    entry.net.check();
    entry.train.check();
    const auto parts = split(embed_lags(seq, entry.net.p), split_spec);
    if (scaling.kind == ScalerKind::minmax) {
      std::vector<double> seen = parts.train.inputs();
      seen.insert(seen.end(), parts.train.targets().begin(), parts.train.targets().end());
      fit_scaler(seen, -1.0, 1.0);
    }
  }
}

}  // namespace

SweepReport run_sweep(const std::vector<GridEntry>& grid, const NoteSequence& seq,
                      const ScalingSpec& scaling, const SplitSpec& split_spec,
                      const SweepOptions& options) {
  check_grid(grid, seq, scaling, split_spec);
  SweepReport report;
  report.cells.resize(grid.size());
  const auto n = static_cast<std::ptrdiff_t>(grid.size());
#ifdef _OPENMP
  const int threads = options.jobs > 0 ? options.jobs : omp_get_max_threads();
#else
  const int threads = 1;
#endif
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    report.cells[k] = run_cell(grid[k], static_cast<std::size_t>(k), seq, scaling, split_spec,
                               options.base_seed);
  }
  (void)threads;
  report.best = select_best(report.cells);
  return report;
}

SweepReport run_sweep_serial(const std::vector<GridEntry>& grid, const NoteSequence& seq,
                             const ScalingSpec& scaling, const SplitSpec& split_spec,
                             const SweepOptions& options) {
  check_grid(grid, seq, scaling, split_spec);
  SweepReport report;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    report.cells.push_back(run_cell(grid[k], k, seq, scaling, split_spec, options.base_seed));
  }
  report.best = select_best(report.cells);
  return report;
}

namespace {

std::string fmt6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

}  // namespace

void write_sweep_csv(std::ostream& out, const SweepReport& report, bool include_timing) {
  out << "row,label,p,q,hidden_act,output_act,rmse,mae,params,seconds,seed,note\n";
  for (const auto& cell : report.cells) {
    const auto& cfg = cell.net_cfg;
    out << cell.entry.row << ',' << cfg.label() << ',' << cfg.p << ',' << cfg.q << ','
        << to_string(cfg.hidden) << ',' << to_string(cfg.output) << ','
        << fmt6(cell.metrics.rmse) << ',' << fmt6(cell.metrics.mae) << ','
        << cell.parameter_count << ',' << (include_timing ? fmt6(cell.train_seconds) : "0")
        << ',' << cell.seed << ',' << csv_field(cell.entry.note) << '\n';
  }
}

}  // namespace raga
