#include "raga/training.hpp"

#include <cmath>
#include <limits>

#include "raga/error.hpp"
#include "raga/rng.hpp"

namespace raga {

void TrainConfig::check() const {
  if (!(eta > 0.0) || !std::isfinite(eta)) throw InputError("eta must be positive");
  if (!(delta >= 0.0 && delta <= 1.0)) throw InputError("delta must lie in [0, 1]");
  if (max_epochs == 0) throw InputError("max_epochs must be positive");
  if (restarts == 0) throw InputError("restarts must be positive");
  if (!(min_improvement >= 0.0)) throw InputError("min_improvement must be non-negative");
}

NetworkWeights init_weights(const NetworkConfig& cfg, std::uint64_t seed) {
  NetworkWeights w(cfg.p, cfg.q);
  Rng rng(seed);
  for (double& v : w.flat()) v = rng.uniform(-0.5, 0.5);
  return w;
}

std::span<const double> MomentumDescent::step(std::span<double> params,
                                              std::span<const double> grad) {
  if (params.size() != velocity_.size() || grad.size() != velocity_.size()) {
    throw ShapeError("momentum step called with mismatched parameter count");
  }
  for (std::size_t k = 0; k < velocity_.size(); ++k) {
    velocity_[k] = -eta_ * grad[k] + delta_ * velocity_[k];
    params[k] += velocity_[k];
  }
  return velocity_;
}

RestartResult train_restart(const NetworkConfig& net_cfg, const TrainConfig& train_cfg,
                            const LagDataset& ds, std::uint64_t seed,
                            const EpochObserver& observer) {
  RestartResult result;
  result.seed = seed;
  result.weights = init_weights(net_cfg, seed);
  result.loss_history.reserve(train_cfg.max_epochs + 1);

  auto current = loss_and_gradient(result.weights, net_cfg, ds);
  result.loss_history.push_back(current.loss);
  if (!std::isfinite(current.loss)) {
    result.diverged_at = 0;
    return result;
  }

  MomentumDescent optimizer(train_cfg.eta, train_cfg.delta, result.weights.size());
  double best = current.loss;
  std::size_t stale = 0;
  for (std::size_t epoch = 1; epoch <= train_cfg.max_epochs; ++epoch) {
    auto step = optimizer.step(result.weights.flat(), current.gradient.flat());
    auto next = loss_and_gradient(result.weights, net_cfg, ds);
    result.loss_history.push_back(next.loss);
    if (observer) {
      observer({epoch, current.gradient.flat(), step, result.weights.flat(), next.loss});
    }
    if (!std::isfinite(next.loss)) {
      result.diverged_at = epoch;
      return result;
    }
    current = std::move(next);
    if (current.loss < best - train_cfg.min_improvement) {
      best = current.loss;
      stale = 0;
    } else if (++stale >= train_cfg.patience) {
      break;
    }
  }
  return result;
}

namespace {

TrainReport reduce_restarts(const std::vector<RestartResult>& runs, const TrainConfig& cfg) {
  TrainReport report;
  std::optional<std::size_t> best;
  for (std::size_t k = 0; k < runs.size(); ++k) {
    const auto& run = runs[k];
    if (run.diverged_at) {
      report.restart_final_losses.push_back(std::numeric_limits<double>::quiet_NaN());
      continue;
    }
    report.restart_final_losses.push_back(run.loss_history.back());
    if (!best || run.loss_history.back() < runs[*best].loss_history.back()) best = k;
  }
  if (!best) {
    // report the epoch at which the first restart blew up
    throw DivergenceError(*runs.front().diverged_at, cfg.eta);
  }
  const auto& winner = runs[*best];
  report.final_weights = winner.weights;
  report.loss_history = winner.loss_history;
  report.epochs_run = winner.loss_history.size() - 1;
  report.best_restart_seed = winner.seed;
  return report;
}

template <bool Parallel>
TrainReport train_impl(const NetworkConfig& net_cfg, const TrainConfig& train_cfg,
                       const LagDataset& ds) {
  net_cfg.check();
  train_cfg.check();
  if (ds.empty()) throw EmptyDataError("training dataset has no rows");
  if (ds.lags() != net_cfg.p) throw ShapeError("dataset lag order does not match network p");

  std::vector<RestartResult> runs(train_cfg.restarts);
  const auto n = static_cast<std::ptrdiff_t>(train_cfg.restarts);
  if constexpr (Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t k = 0; k < n; ++k) {
      runs[k] = train_restart(net_cfg, train_cfg, ds, train_cfg.seed + static_cast<std::uint64_t>(k));
    }
  } else {
    for (std::ptrdiff_t k = 0; k < n; ++k) {
      runs[k] = train_restart(net_cfg, train_cfg, ds, train_cfg.seed + static_cast<std::uint64_t>(k));
    }
  }
  return reduce_restarts(runs, train_cfg);
}

}  // namespace

TrainReport train(const NetworkConfig& net_cfg, const TrainConfig& train_cfg,
                  const LagDataset& ds) {
  return train_impl<true>(net_cfg, train_cfg, ds);
}

TrainReport train_serial(const NetworkConfig& net_cfg, const TrainConfig& train_cfg,
                         const LagDataset& ds) {
  return train_impl<false>(net_cfg, train_cfg, ds);
}

}  // namespace raga
