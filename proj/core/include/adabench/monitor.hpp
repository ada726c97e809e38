#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "adabench/mlp.hpp"
#include "adabench/optimizer.hpp"

namespace adabench {

struct MonitorSetup {
  MlpSpec spec;
  Batch dataset;
  std::size_t batch_size = 32;
  std::uint64_t steps = 10000;
  OptimizerConfig optimizer;
  std::uint64_t seed = 0;
  double threshold = 0.9;
};

/// Per-step check of zeta_t^2 <= beta1 m_{t-1}^2 / (2 - beta1), coordinate by
/// coordinate, where zeta_t is the mini-batch gradient minus the full-batch
/// gradient at the same weights.
struct AssumptionMonitorReport {
  std::vector<double> fraction;       // satisfied share of coordinates, per step
  std::vector<double> noise_sq_mean;  // mean_i zeta_{t,i}^2
  std::vector<double> bound_mean;     // mean_i beta1 m_{t-1,i}^2 / (2 - beta1)
  std::vector<double> loss;           // full-batch loss before step t
  /// Smallest T0 with fraction_t >= threshold for every t > T0.
  std::optional<std::uint64_t> t0;
  /// batch_size >= dataset size: the mini-batch is the full batch, zeta = 0.
  bool degenerate = false;
};

/// Trains the network with the given optimizer on mini-batches drawn without
/// replacement from stream (seed, 1); weights come from stream (seed, 0).
AssumptionMonitorReport assumption_monitor(const MonitorSetup& setup);

/// Smallest T0 such that fraction[t - 1] >= threshold for all t > T0, or
/// empty when the last step is below the threshold.
std::optional<std::uint64_t> burn_in_step(std::span<const double> fraction, double threshold);

}  // namespace adabench
