#include "raga/network.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "raga/error.hpp"

namespace raga {

std::string to_string(Activation a) {
  switch (a) {
    case Activation::identity: return "identity";
    case Activation::tanh: return "tanh";
    case Activation::sigmoid: return "sigmoid";
  }
  return "identity";
}

Activation activation_from_string(const std::string& name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "identity" || lower == "linear") return Activation::identity;
  if (lower == "tanh") return Activation::tanh;
  if (lower == "sigmoid" || lower == "logistic") return Activation::sigmoid;
  throw InputError("unknown activation '" + name + "' (expected identity|tanh|sigmoid)");
}

namespace {

double logistic(double x) noexcept {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace

double activate(Activation a, double x) noexcept {
  switch (a) {
    case Activation::identity: return x;
    case Activation::tanh: return std::tanh(x);
    case Activation::sigmoid: return logistic(x);
  }
  return x;
}

double activate_derivative(Activation a, double x) noexcept {
  switch (a) {
    case Activation::identity: return 1.0;
    case Activation::tanh: {
      const double t = std::tanh(x);
      return 1.0 - t * t;
    }
    case Activation::sigmoid: {
      const double s = logistic(x);
      return s * (1.0 - s);
    }
  }
  return 1.0;
}

std::string NetworkConfig::label() const {
  return "N^{" + std::to_string(p) + "-" + std::to_string(q) + "-1}";
}

void NetworkConfig::check() const {
  if (p < 1) throw InputError("input lags p must be at least 1");
  if (q < 1) throw InputError("hidden units q must be at least 1");
}

NetworkWeights::NetworkWeights(std::size_t p, std::size_t q)
    : p_(p), q_(q), values_(q * (p + 1) + (q + 1), 0.0) {}

NetworkWeights::NetworkWeights(std::size_t p, std::size_t q, std::vector<double> flat)
    : p_(p), q_(q), values_(std::move(flat)) {
  if (values_.size() != q * (p + 1) + (q + 1)) {
    throw ShapeError("weight vector of length " + std::to_string(values_.size()) +
                     " does not fit p=" + std::to_string(p) + " q=" + std::to_string(q));
  }
}

bool NetworkWeights::all_finite() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

namespace {

void check_shapes(const NetworkWeights& w, const NetworkConfig& cfg) {
  if (!w.matches(cfg)) {
    throw ShapeError("weights shaped for p=" + std::to_string(w.p()) + " q=" +
                     std::to_string(w.q()) + " used with " + cfg.label());
  }
}

void check_dataset(const NetworkConfig& cfg, const LagDataset& ds) {
  if (ds.empty()) throw EmptyDataError("dataset has no rows");
  if (ds.lags() != cfg.p) {
    throw ShapeError("dataset has " + std::to_string(ds.lags()) + " lags, network expects " +
                     std::to_string(cfg.p));
  }
}

// Forward pass into caller-owned buffers; returns the output.
double forward_into(const NetworkWeights& w, const NetworkConfig& cfg, std::span<const double> x,
                    std::span<double> hidden_pre, std::span<double> hidden_post,
                    double& output_pre) {
  double acc = w.out(0);
  for (std::size_t j = 0; j < cfg.q; ++j) {
    double z = w.in(j, 0);
    for (std::size_t i = 1; i <= cfg.p; ++i) z += w.in(j, i) * x[i - 1];
    hidden_pre[j] = z;
    hidden_post[j] = activate(cfg.hidden, z);
    acc += w.out(j + 1) * hidden_post[j];
  }
  output_pre = acc;
  return activate(cfg.output, acc);
}

}  // namespace

ForwardPass forward(const NetworkWeights& w, const NetworkConfig& cfg,
                    std::span<const double> input) {
  check_shapes(w, cfg);
  if (input.size() != cfg.p) {
    throw ShapeError("input of length " + std::to_string(input.size()) + " for " + cfg.label());
  }
  ForwardPass pass;
  pass.hidden_pre.resize(cfg.q);
  pass.hidden_post.resize(cfg.q);
  pass.output = forward_into(w, cfg, input, pass.hidden_pre, pass.hidden_post, pass.output_pre);
  return pass;
}

double mse(const NetworkWeights& w, const NetworkConfig& cfg, const LagDataset& ds) {
  check_shapes(w, cfg);
  check_dataset(cfg, ds);
  std::vector<double> pre(cfg.q), post(cfg.q);
  double output_pre = 0.0;
  double sum = 0.0;
  for (std::size_t r = 0; r < ds.rows(); ++r) {
    const double e = ds.target(r) - forward_into(w, cfg, ds.input(r), pre, post, output_pre);
    sum += e * e;
  }
  return sum / static_cast<double>(ds.rows());
}

LossAndGradient loss_and_gradient(const NetworkWeights& w, const NetworkConfig& cfg,
                                  const LagDataset& ds) {
  check_shapes(w, cfg);
  check_dataset(cfg, ds);
  LossAndGradient result{0.0, NetworkWeights::zeros_like(w)};
  NetworkWeights& g = result.gradient;
  const double n = static_cast<double>(ds.rows());
  std::vector<double> pre(cfg.q), post(cfg.q);
  double output_pre = 0.0;
  double sum = 0.0;
  for (std::size_t r = 0; r < ds.rows(); ++r) {
    const auto x = ds.input(r);
    const double e = ds.target(r) - forward_into(w, cfg, x, pre, post, output_pre);
    sum += e * e;
    // dE/d(output_pre) for E = (1/N) sum e^2
    const double delta_out = -2.0 * e / n * activate_derivative(cfg.output, output_pre);
    g.out(0) += delta_out;
    for (std::size_t j = 0; j < cfg.q; ++j) {
      g.out(j + 1) += delta_out * post[j];
      const double delta_hidden =
          delta_out * w.out(j + 1) * activate_derivative(cfg.hidden, pre[j]);
      g.in(j, 0) += delta_hidden;
      for (std::size_t i = 1; i <= cfg.p; ++i) g.in(j, i) += delta_hidden * x[i - 1];
    }
  }
  result.loss = sum / n;
  return result;
}

NetworkWeights gradient(const NetworkWeights& w, const NetworkConfig& cfg, const LagDataset& ds) {
  return loss_and_gradient(w, cfg, ds).gradient;
}

namespace {

template <bool Parallel>
std::vector<Prediction> predict_impl(const NetworkWeights& w, const NetworkConfig& cfg,
                                     const NoteSequence& seq, const Scaler& scaler_in,
                                     const Scaler& scaler_out) {
  check_shapes(w, cfg);
  const LagDataset raw = embed_lags(seq, cfg.p);
  const auto rows = static_cast<std::ptrdiff_t>(raw.rows());
  std::vector<Prediction> out(raw.rows());

  auto predict_row = [&](std::ptrdiff_t r) {
    const auto row = static_cast<std::size_t>(r);
    std::vector<double> x(cfg.p), pre(cfg.q), post(cfg.q);
    const auto raw_x = raw.input(row);
    for (std::size_t i = 0; i < cfg.p; ++i) x[i] = scaler_in.apply(raw_x[i]);
    double output_pre = 0.0;
    const double y = forward_into(w, cfg, x, pre, post, output_pre);
    out[row] = {raw.origin(row), raw.target(row), scaler_out.invert(y)};
  };

  if constexpr (Parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t r = 0; r < rows; ++r) predict_row(r);
  } else {
    for (std::ptrdiff_t r = 0; r < rows; ++r) predict_row(r);
  }
  return out;
}

}  // namespace

std::vector<Prediction> predict_series(const NetworkWeights& w, const NetworkConfig& cfg,
                                       const NoteSequence& seq, const Scaler& scaler_in,
                                       const Scaler& scaler_out) {
  return predict_impl<true>(w, cfg, seq, scaler_in, scaler_out);
}

std::vector<Prediction> predict_series_serial(const NetworkWeights& w, const NetworkConfig& cfg,
                                              const NoteSequence& seq, const Scaler& scaler_in,
                                              const Scaler& scaler_out) {
  return predict_impl<false>(w, cfg, seq, scaler_in, scaler_out);
}

NetworkWeights table2_weights() {
  // rows: hidden unit j; columns: bias, y_{t-1}, y_{t-2}
  return NetworkWeights(2, 4,
                        {
                            -0.621, -0.832, -0.776,  //
                            -0.358, 1.034,  -0.009,  //
                            -0.641, -1.754, -1.831,  //
                            0.429,  -3.818, -2.988,  //
                            -0.852, -1.202, 2.845,  -1.206, 1.222,
                        });
}

}  // namespace raga
