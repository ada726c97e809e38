#pragma once

#include <span>
#include <vector>

#include "adabench/online.hpp"
#include "adabench/optimizer.hpp"

namespace adabench {

/// R(T') = sum_{t <= T'} [f_t(theta_{t-1}) - f_t(theta*)] for T' = 1..T.
struct RegretReport {
  std::vector<double> learner_loss;  // f_t(theta_{t-1}), the loss paid in round t
  std::vector<double> regret;        // accumulated online, round by round
  std::vector<double> regret_over_t;
  /// Log-log slope of R(T')/T' over the final decade (NaN if R <= 0 there).
  double slope = 0.0;
  ParamVector final_params;
};

/// Plays the stream with the given optimizer from `start`. The optimizer
/// must use alpha_t = alpha / sqrt(t) and an exponentially decaying beta1;
/// anything else is a ConfigError.
RegretReport regret_harness(const OnlineConvexStream& stream, const OptimizerConfig& config,
                            const ParamVector& start);

/// Regret series rebuilt from stored learner losses and the stream's
/// comparator prefix sums.
std::vector<double> recompute_regret(const OnlineConvexStream& stream,
                                     std::span<const double> learner_loss);

}  // namespace adabench
