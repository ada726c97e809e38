#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "adabench/basin.hpp"
#include "adabench/optimizer.hpp"
#include "adabench/stable.hpp"

namespace adabench {

struct EscapeTrialReport {
  std::uint64_t trial = 0;
  /// First step whose iterate lies outside the escape boundary; equals the
  /// budget when censored.
  std::uint64_t gamma = 0;
  bool censored = false;
};

struct EscapeStats {
  std::string optimizer;
  std::vector<EscapeTrialReport> trials;  // in trial-index order
  /// Censored trials count as gamma = budget.
  double mean_gamma = 0.0;
  double median_gamma = 0.0;
  std::size_t censored = 0;
};

struct EscapeReport {
  std::string landscape;
  std::string basin;
  StableNoiseSpec noise;
  std::uint64_t budget = 0;
  std::uint64_t master_seed = 0;
  std::vector<EscapeStats> per_optimizer;  // in the order the configs were given
};

struct EscapeSetup {
  std::string basin;
  StableNoiseSpec noise;
  std::size_t trials = 100;
  std::uint64_t budget = 10000;
  std::uint64_t master_seed = 0;
  /// Worker threads; 0 picks the hardware concurrency.
  unsigned threads = 0;
};

/// Monte-Carlo escape times. Every trial starts at the basin minimum with a
/// fresh optimizer state; trial i draws its noise from stream (seed, i) for
/// every optimizer, so results are paired by common random numbers and do
/// not depend on the thread count.
///
/// Throws ConfigError for trials < 30 or budget < 1.
EscapeReport escape_harness(const BasinLandscape& landscape,
                            std::span<const OptimizerConfig> optimizers,
                            const EscapeSetup& setup);

/// Single trial, exposed for tests and tooling.
EscapeTrialReport escape_trial(const BasinLandscape& landscape, const Basin& basin,
                               const OptimizerConfig& optimizer, const StableNoiseSpec& noise,
                               std::uint64_t budget, std::uint64_t master_seed,
                               std::uint64_t trial);

struct SignTestResult {
  std::size_t wins = 0;    // trials with gamma(a) > gamma(b)
  std::size_t losses = 0;  // trials with gamma(a) < gamma(b)
  std::size_t ties = 0;
  /// One-sided P(Binomial(wins + losses, 1/2) >= wins); 1 when every pair ties.
  double p_value = 1.0;
};

/// Paired sign test of "a stays longer than b". Throws StructuralError if the
/// two sets of trials are not paired index by index.
SignTestResult paired_sign_test(const EscapeStats& a, const EscapeStats& b);

}  // namespace adabench
