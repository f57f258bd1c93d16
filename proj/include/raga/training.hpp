#pragma once

// Full-batch gradient descent with momentum:
//
//   dw(t+1) = -eta * dE/dw + delta * dw(t),   dw(0) = 0
//
// Restarts use seeds seed, seed+1, ... and run in an OpenMP parallel loop;
// train_serial is the single-threaded reference and returns a bit-identical
// report.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "raga/network.hpp"
#include "raga/series.hpp"

namespace raga {

struct TrainConfig {
  double eta = 0.05;
  double delta = 0.9;
  std::size_t max_epochs = 5000;
  std::size_t patience = 200;
  double min_improvement = 1e-8;
  std::uint64_t seed = 0;
  std::size_t restarts = 10;

  /// Throws InputError on eta <= 0, delta outside [0, 1], zero epochs or restarts.
  void check() const;
};

struct TrainReport {
  NetworkWeights final_weights;
  std::size_t epochs_run = 0;
  /// Entry 0 is the loss at initialization, entry e the loss after e updates.
  std::vector<double> loss_history;
  std::uint64_t best_restart_seed = 0;
  /// Final loss of every restart in seed order; NaN marks a diverged restart.
  std::vector<double> restart_final_losses;

  double final_loss() const { return loss_history.back(); }

  friend bool operator==(const TrainReport&, const TrainReport&) = default;
};

/// Uniform on [-0.5, 0.5] from the pinned Rng, in flat parameter order.
NetworkWeights init_weights(const NetworkConfig& cfg, std::uint64_t seed);

/// Holds the velocity dw between steps.
class MomentumDescent {
public:
  MomentumDescent(double eta, double delta, std::size_t parameters)
      : eta_(eta), delta_(delta), velocity_(parameters, 0.0) {}

  /// Updates the velocity from `grad`, adds it to `params`, returns it.
  std::span<const double> step(std::span<double> params, std::span<const double> grad);

  std::span<const double> velocity() const noexcept { return velocity_; }

private:
  double eta_;
  double delta_;
  std::vector<double> velocity_;
};

struct EpochTrace {
  std::size_t epoch = 0;
  std::span<const double> gradient;  // dE/dw at the weights before the update
  std::span<const double> step;      // dw applied this epoch
  std::span<const double> weights;   // weights after the update
  double loss = 0.0;                 // loss after the update
};

using EpochObserver = std::function<void(const EpochTrace&)>;

struct RestartResult {
  NetworkWeights weights;
  std::vector<double> loss_history;
  std::uint64_t seed = 0;
  /// Set when a non-finite loss aborted the run.
  std::optional<std::size_t> diverged_at;
};

/// One seeded run. Never throws on divergence; check diverged_at.
RestartResult train_restart(const NetworkConfig& net_cfg, const TrainConfig& train_cfg,
                            const LagDataset& ds, std::uint64_t seed,
                            const EpochObserver& observer = {});

/// Best of `restarts` runs by final loss, ties to the lower seed. Throws
/// DivergenceError when every restart diverged.
TrainReport train(const NetworkConfig& net_cfg, const TrainConfig& train_cfg,
                  const LagDataset& ds);
TrainReport train_serial(const NetworkConfig& net_cfg, const TrainConfig& train_cfg,
                         const LagDataset& ds);

}  // namespace raga
