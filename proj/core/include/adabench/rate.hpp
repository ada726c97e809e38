#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "adabench/optimizer.hpp"
#include "adabench/problems.hpp"
#include "adabench/stable.hpp"

namespace adabench {

struct RateReport {
  /// ||grad f(theta_t)||^2 for t = 0..T.
  std::vector<double> grad_sq;
  /// A(T') = (1 / (T' + 1)) sum_{t <= T'} ||grad f(theta_t)||^2, T' = 0..T.
  std::vector<double> running_average;
  /// Log-log slope of A over the final decade (NaN if A hits zero there).
  double slope = 0.0;
  ParamVector final_params;
};

/// Runs T steps with alpha_t = alpha / sqrt(t) and 1 - beta1_t = (1 - beta1) / sqrt(t)
/// (beta1 = 0 gives 1 / sqrt(t)); other schedules are a ConfigError. Optional
/// SaS gradient noise is drawn from stream (seed, 0).
RateReport nonconvex_rate_harness(const Problem& problem, const OptimizerConfig& config,
                                  const ParamVector& start, std::uint64_t horizon,
                                  const std::optional<StableNoiseSpec>& noise = std::nullopt,
                                  std::uint64_t seed = 0);

}  // namespace adabench
