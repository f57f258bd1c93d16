#pragma once

// Single-hidden-layer autoregressive network:
//
//   y_t = out( w_0 + sum_j w_j * hid( w_{0,j} + sum_i w_{i,j} * y_{t-i} ) )
//
// with linear (identity) output in the classic form. Parameters are stored
// in one flat vector: the q x (p+1) input->hidden block row-major (column 0
// is the hidden bias), followed by the q+1 hidden->output entries
// (element 0 is the output bias).

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "raga/notation.hpp"
#include "raga/series.hpp"

namespace raga {

enum class Activation { identity, tanh, sigmoid };

std::string to_string(Activation a);
/// Accepts identity|tanh|sigmoid (case-insensitive).
Activation activation_from_string(const std::string& name);

/// Logistic 1/(1+exp(-x)) for sigmoid; overflow-free for large |x|.
double activate(Activation a, double x) noexcept;
/// Derivative with respect to the pre-activation x.
double activate_derivative(Activation a, double x) noexcept;

struct NetworkConfig {
  std::size_t p = 1;
  std::size_t q = 1;
  Activation hidden = Activation::tanh;
  Activation output = Activation::identity;

  /// "N^{p-q-1}"
  std::string label() const;
  std::size_t parameter_count() const noexcept { return q * (p + 1) + (q + 1); }
  /// Throws InputError unless p >= 1 and q >= 1.
  void check() const;

  friend bool operator==(const NetworkConfig&, const NetworkConfig&) = default;
};

class NetworkWeights {
public:
  NetworkWeights() = default;
  /// Zero-initialized.
  NetworkWeights(std::size_t p, std::size_t q);
  NetworkWeights(std::size_t p, std::size_t q, std::vector<double> flat);
  static NetworkWeights zeros_like(const NetworkWeights& w) { return {w.p_, w.q_}; }

  std::size_t p() const noexcept { return p_; }
  std::size_t q() const noexcept { return q_; }
  std::size_t size() const noexcept { return values_.size(); }

  /// j in 0..q-1; i = 0 is the hidden bias, i in 1..p weighs y_{t-i}.
  double& in(std::size_t j, std::size_t i) { return values_[j * (p_ + 1) + i]; }
  double in(std::size_t j, std::size_t i) const { return values_[j * (p_ + 1) + i]; }
  /// j = 0 is the output bias, j in 1..q weighs hidden unit j.
  double& out(std::size_t j) { return values_[q_ * (p_ + 1) + j]; }
  double out(std::size_t j) const { return values_[q_ * (p_ + 1) + j]; }

  std::span<double> flat() noexcept { return values_; }
  std::span<const double> flat() const noexcept { return values_; }

  bool all_finite() const noexcept;
  bool matches(const NetworkConfig& cfg) const noexcept { return cfg.p == p_ && cfg.q == q_; }

  friend bool operator==(const NetworkWeights&, const NetworkWeights&) = default;

private:
  std::size_t p_ = 0;
  std::size_t q_ = 0;
  std::vector<double> values_;
};

struct ForwardPass {
  double output = 0.0;
  double output_pre = 0.0;
  std::vector<double> hidden_pre;
  std::vector<double> hidden_post;
};

/// Throws ShapeError when weights or input disagree with cfg.
ForwardPass forward(const NetworkWeights& w, const NetworkConfig& cfg,
                    std::span<const double> input);

/// Mean squared error over all rows. Throws EmptyDataError on no rows.
double mse(const NetworkWeights& w, const NetworkConfig& cfg, const LagDataset& ds);

struct LossAndGradient {
  double loss = 0.0;
  NetworkWeights gradient;
};

/// Exact gradient of mse, averaged over rows. Computes the loss on the
/// same forward passes.
LossAndGradient loss_and_gradient(const NetworkWeights& w, const NetworkConfig& cfg,
                                  const LagDataset& ds);
NetworkWeights gradient(const NetworkWeights& w, const NetworkConfig& cfg, const LagDataset& ds);

struct Prediction {
  std::size_t t = 0;
  double observed = 0.0;
  double predicted = 0.0;
};

/// One-step-ahead predictions for t = p+1..N from observed history, inverse
/// scaled back to raw pitch units. Rows are evaluated with an OpenMP
/// parallel loop; predict_series_serial is the reference.
std::vector<Prediction> predict_series(const NetworkWeights& w, const NetworkConfig& cfg,
                                       const NoteSequence& seq, const Scaler& scaler_in,
                                       const Scaler& scaler_out);
std::vector<Prediction> predict_series_serial(const NetworkWeights& w, const NetworkConfig& cfg,
                                              const NoteSequence& seq, const Scaler& scaler_in,
                                              const Scaler& scaler_out);

/// Weights estimated for N^{2-4-1} in the original study.
NetworkWeights table2_weights();

}  // namespace raga
