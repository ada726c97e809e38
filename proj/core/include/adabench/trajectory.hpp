#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "adabench/optimizer.hpp"
#include "adabench/problems.hpp"
#include "adabench/stable.hpp"

namespace adabench {

/// Measurements taken after step t, at theta_t.
struct StepRecord {
  std::uint64_t t = 0;
  double loss = 0.0;
  double grad_sq_norm = 0.0;  // ||grad f(theta_t)||^2 of the noiseless objective
  double eff_step_min = 0.0;
  double eff_step_mean = 0.0;
  double eff_step_max = 0.0;
  double alpha_t = 0.0;
  double beta1_t = 0.0;
};

struct RunFailure {
  std::uint64_t step = 0;
  std::string reason;
};

struct Trajectory {
  std::vector<StepRecord> records;
  /// theta_t for each record, filled when RunOptions::record_params is set.
  std::vector<ParamVector> params;
  ParamVector final_params;
  std::uint64_t steps_taken = 0;
  std::optional<RunFailure> failure;

  bool ok() const noexcept { return !failure.has_value(); }
};

struct RunOptions {
  std::uint64_t record_every = 1;
  bool record_params = false;
  /// Gradient noise added at every step; drawn from stream (seed, 0).
  std::optional<StableNoiseSpec> noise;
  std::uint64_t seed = 0;
};

/// Runs `steps` optimizer steps from `start`. A non-finite loss or gradient
/// stops the run; the records gathered so far are kept and `failure` names
/// the step. The final step is always recorded.
Trajectory run(const Problem& problem, const OptimizerConfig& config, const ParamVector& start,
               std::uint64_t steps, const RunOptions& options = {});

struct RaceEntry {
  std::string label;
  OptimizerConfig config;
};

struct RaceResult {
  std::string label;
  double alpha = 0.0;
  /// First step with f(theta_t) - f* <= threshold; 1 when the start already
  /// qualifies; empty when censored at the budget.
  std::optional<std::uint64_t> steps_to_threshold;
  double final_gap = 0.0;
  /// max over t of ||theta_t - theta*||, including t = 0.
  double max_distance = 0.0;
  double start_distance = 0.0;
  bool diverged = false;
};

/// Races every entry on the same problem and start. Throws ConfigError when
/// the problem has no declared optimum or threshold <= 0.
std::vector<RaceResult> race(const Problem& problem, std::span<const RaceEntry> entries,
                             const ParamVector& start, std::uint64_t steps, double threshold);

}  // namespace adabench
