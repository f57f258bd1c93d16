// raga: command-line driver for the note-sequence network, architecture
// sweeps, the Markov baseline and corpus utilities.
//
// Exit status: 0 success, 2 usage or input error, 3 numeric failure.

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "raga/error.hpp"
#include "raga/markov.hpp"
#include "raga/model_io.hpp"
#include "raga/network.hpp"
#include "raga/notation.hpp"
#include "raga/selection.hpp"
#include "raga/series.hpp"
#include "raga/training.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNumeric = 3;

std::string real(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

std::string g6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct CorpusOptions {
  bool builtin = false;
  std::string path;

  void add(CLI::App& cmd) {
    auto* b = cmd.add_flag("--builtin-corpus", builtin, "Use the embedded 240-note corpus (default)");
    cmd.add_option("--corpus", path, "Corpus file (tokens or sr,pitch CSV)")
        ->check(CLI::ExistingFile)
        ->excludes(b);
  }

  raga::NoteSequence load() const {
    return path.empty() ? raga::load_corpus() : raga::load_corpus_file(path);
  }
};

struct TrainOptions {
  raga::TrainConfig cfg;

  void add(CLI::App& cmd) {
    cmd.add_option("--eta", cfg.eta, "Learning rate")->capture_default_str();
    cmd.add_option("--delta", cfg.delta, "Momentum in [0, 1]")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    cmd.add_option("--epochs", cfg.max_epochs, "Maximum epochs per restart")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd.add_option("--patience", cfg.patience, "Epochs without improvement before stopping")
        ->capture_default_str();
    cmd.add_option("--min-improvement", cfg.min_improvement, "Improvement that resets patience")
        ->capture_default_str();
    cmd.add_option("--restarts", cfg.restarts, "Seeded restarts; the best is kept")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd.add_option("--seed", cfg.seed, "Base seed")->envname("RAGA_SEED")->capture_default_str();
  }
};

void write_predictions_csv(const std::string& path, const std::vector<raga::Prediction>& preds) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw raga::InputError("cannot write " + path);
  out << "t,observed,predicted\n";
  for (const auto& p : preds) {
    out << p.t << ',' << real(p.observed) << ',' << real(p.predicted) << '\n';
  }
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw raga::InputError("cannot write " + path);
  return out;
}

// -- train ----------------------------------------------------------------

struct TrainCommand {
  CorpusOptions corpus;
  TrainOptions training;
  std::size_t p = 2;
  std::size_t q = 4;
  std::string hidden = "sigmoid";
  std::string output = "identity";
  std::string scaling = "minmax";
  double holdout = 0.0;
  std::string model_path;
  std::string loss_csv;
  bool pretty = false;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("train", "Fit one network to a note sequence");
    corpus.add(*cmd);
    training.add(*cmd);
    cmd->add_option("--p", p, "Input lags")->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--q", q, "Hidden units")->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--hidden", hidden, "Hidden activation: identity|tanh|sigmoid")
        ->capture_default_str();
    cmd->add_option("--output", output, "Output activation: identity|tanh|sigmoid")
        ->capture_default_str();
    cmd->add_option("--scaling", scaling, "none|minmax")->capture_default_str();
    cmd->add_option("--holdout", holdout, "Tail fraction held out for evaluation")
        ->capture_default_str();
    cmd->add_option("-o,--out", model_path, "Model JSON to write");
    cmd->add_option("--loss-csv", loss_csv, "Per-epoch loss of the best restart (epoch,mse)");
    cmd->add_flag("--pretty", pretty, "Human-readable summary");
    cmd->callback([this] { run(); });
  }

  void run() const {
    const auto seq = corpus.load();
    const raga::NetworkConfig net{p, q, raga::activation_from_string(hidden),
                                  raga::activation_from_string(output)};
    const auto fit = raga::fit_and_evaluate(net, training.cfg, seq,
                                            {raga::scaler_kind_from_string(scaling)}, {holdout});
    if (!model_path.empty()) raga::save_model(fit.model, model_path);
    if (!loss_csv.empty()) {
      auto out = open_output(loss_csv);
      out << "epoch,mse\n";
      for (std::size_t e = 0; e < fit.report.loss_history.size(); ++e) {
        out << e << ',' << real(fit.report.loss_history[e]) << '\n';
      }
    }
    if (pretty) {
      std::cout << net.label() << "  hidden=" << hidden << " output=" << output << '\n'
                << "  best restart seed " << fit.report.best_restart_seed << ", "
                << fit.report.epochs_run << " epochs\n"
                << "  RMSE " << g6(fit.metrics.rmse) << "   MAE " << g6(fit.metrics.mae)
                << "   (raw pitch units, " << fit.evaluation.size() << " rows)\n";
    } else {
      std::cout << "rmse=" << g6(fit.metrics.rmse) << " mae=" << g6(fit.metrics.mae) << '\n'
                << "label=" << net.label() << " epochs=" << fit.report.epochs_run
                << " seed=" << fit.report.best_restart_seed << '\n';
    }
  }
};

// -- sweep ----------------------------------------------------------------

struct SweepCommand {
  CorpusOptions corpus;
  TrainOptions training;
  bool table1c = false;
  std::string grid_path;
  std::string scaling = "minmax";
  double holdout = 0.0;
  int jobs = 0;
  bool timing = false;
  std::string out_path;
  bool pretty = false;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("sweep", "Train every configuration of a grid and rank them");
    corpus.add(*cmd);
    training.add(*cmd);
    auto* t = cmd->add_flag("--table1c", table1c, "Use the builtin 38-row grid");
    cmd->add_option("--grid", grid_path, "Grid file with p,q,hidden_act,output_act lines")
        ->check(CLI::ExistingFile)
        ->excludes(t);
    cmd->add_option("--scaling", scaling, "none|minmax")->capture_default_str();
    cmd->add_option("--holdout", holdout, "Tail fraction held out for evaluation")
        ->capture_default_str();
    cmd->add_option("--jobs", jobs, "Worker threads (0 = OpenMP default)")
        ->check(CLI::NonNegativeNumber);
    cmd->add_flag("--timing", timing, "Record wall-clock seconds in the CSV");
    cmd->add_option("-o,--out", out_path, "Sweep CSV to write");
    cmd->add_flag("--pretty", pretty, "Print a ranked table");
    cmd->callback([this] { run(); });
  }

  void run() const {
    std::vector<raga::GridEntry> grid;
    if (!grid_path.empty()) {
      std::ifstream in(grid_path);
      grid = raga::parse_grid(in, training.cfg);
    } else {
      grid = raga::table1c_grid();
      for (auto& entry : grid) entry.train = training.cfg;
    }
    const auto seq = corpus.load();
    const auto report =
        raga::run_sweep(grid, seq, {raga::scaler_kind_from_string(scaling)}, {holdout},
                        {training.cfg.seed, jobs});
    if (!out_path.empty()) {
      auto out = open_output(out_path);
      raga::write_sweep_csv(out, report, timing);
    }
    const auto& best = report.cells[report.best];
    if (pretty) {
      std::printf("%-4s %-10s %-8s %-8s %9s %9s %9s %9s\n", "row", "label", "hidden", "output",
                  "rmse", "mae", "paper", "paper");
      for (const auto& c : report.cells) {
        std::printf("%-4zu %-10s %-8s %-8s %9.4f %9.4f", c.entry.row, c.net_cfg.label().c_str(),
                    raga::to_string(c.net_cfg.hidden).c_str(),
                    raga::to_string(c.net_cfg.output).c_str(), c.metrics.rmse, c.metrics.mae);
        if (c.entry.reported) {
          std::printf(" %9.3f %9.3f", c.entry.reported->rmse, c.entry.reported->mae);
        }
        std::printf("%s\n", &c == &best ? "  <- best" : "");
      }
    }
    std::cout << "best_row=" << best.entry.row << " best_label=" << best.net_cfg.label()
              << " rmse=" << g6(best.metrics.rmse) << " mae=" << g6(best.metrics.mae)
              << " cells=" << report.cells.size() << '\n';
  }
};

// -- replay / predict -------------------------------------------------------

struct ReplayCommand {
  CorpusOptions corpus;
  std::string model_path;
  bool builtin_table2 = false;
  std::string table2_hidden = "tanh";
  bool raw = false;
  std::string out_path;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("replay", "Replay a model over a sequence (t,observed,predicted)");
    corpus.add(*cmd);
    auto* m = cmd->add_option("--model", model_path, "Model JSON")->check(CLI::ExistingFile);
    auto* b = cmd->add_flag("--builtin-table2", builtin_table2,
                            "Use the published N^{2-4-1} weights")
                  ->excludes(m);
    cmd->add_option("--table2-hidden", table2_hidden, "Hidden activation for the builtin weights")
        ->needs(b)
        ->capture_default_str();
    cmd->add_flag("--raw", raw, "Apply the builtin weights to unscaled pitches")->needs(b);
    cmd->add_option("-o,--out", out_path, "CSV to write");
    cmd->callback([this] { run(); });
  }

  void run() const {
    if (model_path.empty() && !builtin_table2) {
      throw raga::InputError("replay needs --model or --builtin-table2");
    }
    raga::Model model = builtin_table2
                            ? raga::table2_model(raga::activation_from_string(table2_hidden))
                            : raga::load_model(model_path);
    if (raw) model.scaler_in = model.scaler_out = raga::Scaler::identity();
    const auto seq = corpus.load();
    const auto preds = raga::predict_series(model.weights, model.config, seq, model.scaler_in,
                                            model.scaler_out);
    if (!out_path.empty()) write_predictions_csv(out_path, preds);
    const auto m = raga::metrics(preds);
    std::cout << "rows=" << preds.size() << " rmse=" << g6(m.rmse) << " mae=" << g6(m.mae)
              << '\n';
  }
};

struct PredictCommand {
  CorpusOptions corpus;
  std::string model_path;
  std::string out_path;

  void add(CLI::App& app) {
    auto* cmd =
        app.add_subcommand("predict", "Forecast the note after a sequence with a trained model");
    corpus.add(*cmd);
    cmd->add_option("--model", model_path, "Model JSON")->required()->check(CLI::ExistingFile);
    cmd->add_option("-o,--out", out_path, "In-sample t,observed,predicted CSV to write");
    cmd->callback([this] { run(); });
  }

  void run() const {
    const auto model = raga::load_model(model_path);
    const auto seq = corpus.load();
    if (seq.size() < model.config.p) {
      throw raga::InsufficientDataError("sequence shorter than the model's lag order");
    }
    if (!out_path.empty() && seq.size() > model.config.p) {
      write_predictions_csv(out_path, raga::predict_series(model.weights, model.config, seq,
                                                           model.scaler_in, model.scaler_out));
    }
    std::vector<double> x(model.config.p);
    for (std::size_t i = 1; i <= model.config.p; ++i) {
      x[i - 1] = model.scaler_in.apply(seq.at(seq.size() + 1 - i).value());
    }
    const double y =
        model.scaler_out.invert(raga::forward(model.weights, model.config, x).output);
    const int nearest = std::clamp(static_cast<int>(std::lround(y)), raga::kMinPitch,
                                   raga::kMaxPitch);
    std::cout << "t=" << seq.size() + 1 << " predicted=" << g6(y) << " nearest=" << nearest
              << " swara=" << raga::render_swara(raga::decode_pitch(nearest)) << '\n';
  }
};

// -- markov -----------------------------------------------------------------

struct MarkovFitCommand {
  CorpusOptions corpus;
  std::string out_path;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("markov-fit", "Estimate the pitch transition matrix");
    corpus.add(*cmd);
    cmd->add_option("-o,--out", out_path, "Matrix CSV to write");
    cmd->callback([this] { run(); });
  }

  void run() const {
    const auto tm = raga::estimate_transitions(corpus.load());
    if (!out_path.empty()) {
      auto out = open_output(out_path);
      raga::write_matrix_csv(out, tm);
    } else {
      raga::write_matrix_csv(std::cout, tm);
    }
    std::size_t absorbing = 0;
    for (bool a : tm.absorbing()) absorbing += a ? 1 : 0;
    std::cerr << "states=" << tm.states() << " absorbing=" << absorbing << '\n';
  }
};

struct MarkovGenCommand {
  CorpusOptions corpus;
  int start = 0;
  std::size_t length = 240;
  std::uint64_t seed = 0;
  std::string out_path;
  std::string csv_path;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("markov-gen", "Simulate a sequence from the fitted chain");
    corpus.add(*cmd);
    cmd->add_option("--start", start, "Starting pitch (must occur in the corpus)")
        ->capture_default_str();
    cmd->add_option("--length", length, "Notes to generate")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--seed", seed, "Seed")->envname("RAGA_SEED")->capture_default_str();
    cmd->add_option("-o,--out", out_path, "Swara text file (stdout when omitted)");
    cmd->add_option("--csv", csv_path, "Numeric t,pitch CSV");
    cmd->callback([this] { run(); });
  }

  void run() const {
    const auto tm = raga::estimate_transitions(corpus.load());
    const auto seq = raga::simulate(tm, start, length, seed);
    const std::string text = raga::render_sequence(seq) + "\n";
    if (out_path.empty()) {
      std::cout << text;
    } else {
      open_output(out_path) << text;
    }
    if (!csv_path.empty()) {
      auto out = open_output(csv_path);
      out << "t,pitch\n";
      for (std::size_t t = 1; t <= seq.size(); ++t) out << t << ',' << seq.at(t).value() << '\n';
    }
    const auto report = raga::validate_against_raga(seq, raga::bageshree_profile());
    std::cerr << "length=" << seq.size() << " vivadi=" << report.vivadi_count << '\n';
  }
};

// -- validate / export --------------------------------------------------------

struct ValidateCommand {
  CorpusOptions corpus;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("validate", "Count notes forbidden in raga Bageshree");
    corpus.add(*cmd);
    cmd->callback([this] { run(); });
  }

  void run() const {
    const auto report = raga::validate_against_raga(corpus.load(), raga::bageshree_profile());
    std::cout << "raga=Bageshree total=" << report.total_notes
              << " vivadi=" << report.vivadi_count << " positions=";
    for (std::size_t k = 0; k < report.vivadi_positions.size(); ++k) {
      std::cout << (k ? ";" : "") << report.vivadi_positions[k];
    }
    std::cout << '\n';
  }
};

struct ExportCommand {
  std::string format = "swara";
  std::string out_path;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("export-corpus", "Write the embedded corpus");
    cmd->add_option("--format", format, "swara|numeric|csv")
        ->check(CLI::IsMember({"swara", "numeric", "csv"}))
        ->capture_default_str();
    cmd->add_option("-o,--out", out_path, "File to write (stdout when omitted)");
    cmd->callback([this] { run(); });
  }

  void run() const {
    const auto seq = raga::load_corpus();
    std::ostringstream text;
    if (format == "csv") {
      text << "sr,pitch\n";
      for (std::size_t t = 1; t <= seq.size(); ++t) text << t << ',' << seq.at(t).value() << '\n';
    } else if (format == "numeric") {
      text << "# Bageshree, 240 notes, semitones from middle Sa\n";
      for (std::size_t t = 1; t <= seq.size(); ++t) {
        text << seq.at(t).value() << (t % 20 == 0 || t == seq.size() ? '\n' : ' ');
      }
    } else {
      text << raga::render_sequence(seq) << '\n';
    }
    if (out_path.empty()) {
      std::cout << text.str();
    } else {
      open_output(out_path) << text.str();
    }
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Autoregressive network and Markov models of a raga note sequence"};
  app.require_subcommand(1, 1);

  TrainCommand train;
  SweepCommand sweep;
  ReplayCommand replay;
  PredictCommand predict;
  MarkovFitCommand markov_fit;
  MarkovGenCommand markov_gen;
  ValidateCommand validate;
  ExportCommand export_corpus;
  train.add(app);
  sweep.add(app);
  replay.add(app);
  predict.add(app);
  markov_fit.add(app);
  markov_gen.add(app);
  validate.add(app);
  export_corpus.add(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  } catch (const raga::NumericError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const raga::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitOk;
}
