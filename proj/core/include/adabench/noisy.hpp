#pragma once

#include "adabench/problems.hpp"
#include "adabench/rng.hpp"
#include "adabench/stable.hpp"

namespace adabench {

/// Problem whose gradient oracle adds fresh SaS noise on every call.
/// Owns its stream position, so one instance belongs to one run.
class NoisyProblem {
 public:
  NoisyProblem(Problem base, StableNoiseSpec noise, RngStream rng);

  const Problem& base() const noexcept { return base_; }
  const StableNoiseSpec& noise() const noexcept { return noise_; }

  /// grad(theta) + zeta with zeta ~ SaS(noise) per coordinate. A zero scale
  /// returns grad(theta) exactly.
  ParamVector noisy_grad(const ParamVector& theta);

 private:
  Problem base_;
  StableNoiseSpec noise_;
  RngStream rng_;
};

}  // namespace adabench
