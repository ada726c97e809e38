#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "adabench/param_vector.hpp"
#include "adabench/schedule.hpp"

namespace adabench {

enum class DecayMode { none, coupled, decoupled };

/// Step size, EMA rates, damping term and weight decay of one run.
struct HyperParams {
  double alpha = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  double weight_decay = 0.0;
  DecayMode decay_mode = DecayMode::none;
  ScheduleSpec alpha_schedule;
  ScheduleSpec beta1_schedule;

  /// Throws ConfigError unless alpha > 0, beta1 and beta2 in [0, 1),
  /// epsilon >= 0 and weight_decay >= 0.
  void validate() const;

  bool operator==(const HyperParams&) const = default;
};

/// What feeds the second-moment accumulator.
enum class SecondMomentInput {
  raw_grad,             // k_t = g_t
  momentum,             // k_t = m_t
  grad_minus_momentum,  // k_t = g_t - m_t
  none,                 // no preconditioner, v_t = 1
};

/// Where the damping term enters the preconditioner.
enum class EpsPlacement {
  inside_accumulator,  // v_t += eps every step, denominator sqrt(v_hat)
  outside_sqrt,        // denominator sqrt(v_hat) + eps
};

/// Configuration of the unified update
///   m_t = b1 m_{t-1} + (1 - b1) g_t,  v_t = b2 v_{t-1} + (1 - b2) k_t^2,
///   theta_t = theta_{t-1} - alpha_t * m_hat / denom.
struct KernelSpec {
  SecondMomentInput second_moment_input = SecondMomentInput::raw_grad;
  EpsPlacement eps_placement = EpsPlacement::outside_sqrt;
  bool bias_correction = true;
  bool sign_only = false;
  /// When false m_t = g_t (RMSprop, Rprop, plain SGD).
  bool first_moment_ema = true;

  static KernelSpec adamomentum() {
    return {SecondMomentInput::momentum, EpsPlacement::inside_accumulator, true, false, true};
  }
  static KernelSpec adam() {
    return {SecondMomentInput::raw_grad, EpsPlacement::outside_sqrt, true, false, true};
  }
  static KernelSpec rmsprop() {
    return {SecondMomentInput::raw_grad, EpsPlacement::outside_sqrt, false, false, false};
  }
  static KernelSpec rprop() {
    return {SecondMomentInput::raw_grad, EpsPlacement::outside_sqrt, false, true, false};
  }
  static KernelSpec adabelief() {
    return {SecondMomentInput::grad_minus_momentum, EpsPlacement::inside_accumulator, true,
            false, true};
  }
  static KernelSpec sgd() {
    return {SecondMomentInput::none, EpsPlacement::outside_sqrt, false, false, false};
  }
  static KernelSpec sgdm() {
    return {SecondMomentInput::none, EpsPlacement::outside_sqrt, true, false, true};
  }

  bool operator==(const KernelSpec&) const = default;
};

/// Step counter and moment estimates of one run. Single owner.
struct OptimizerState {
  std::uint64_t t = 0;
  ParamVector m;
  ParamVector v;
  KernelSpec kernel;
  /// Running product of scheduled beta1 values; only consulted when the
  /// beta1 schedule is not constant.
  double beta1_product = 1.0;

  OptimizerState() = default;
  OptimizerState(const KernelSpec& kernel, std::size_t dim)
      : m(dim), v(dim), kernel(kernel) {}
};

/// One optimizer step, in place. Gradient g is the raw oracle output; coupled
/// weight decay adds wd * theta to it, decoupled decay subtracts
/// alpha_t * wd * theta_{t-1} after the adaptive update. Coordinates whose
/// denominator is exactly zero receive no update.
///
/// Throws StructuralError on length mismatch and EvaluationError on a
/// non-finite gradient; state and params are untouched in both cases.
void step(OptimizerState& state, ParamVector& params, const ParamVector& grad,
          const HyperParams& hp);

/// Elementwise multiplier applied to m_hat at the last step:
/// alpha_t / sqrt(v_hat) or alpha_t / (sqrt(v_hat) + eps). Coordinates with
/// a zero denominator report 0. Throws StateError before the first step.
ParamVector effective_stepsize(const OptimizerState& state, const HyperParams& hp);

struct DebiasedMoments {
  ParamVector m_hat;
  ParamVector v_hat;
};

/// m / (1 - prod beta1) and v / (1 - beta2^t); identity when the kernel has
/// bias correction off. Throws StateError when t == 0.
DebiasedMoments debiased_moments(const OptimizerState& state, const HyperParams& hp);

/// A kernel plus hyperparameters under a display name.
struct OptimizerConfig {
  std::string name;
  KernelSpec kernel;
  HyperParams hp;

  bool operator==(const OptimizerConfig&) const = default;
};

/// Names accepted by named_optimizer().
const std::vector<std::string>& optimizer_names();

/// Default configuration for adamomentum, adam, adamw, adabelief, rmsprop,
/// rprop, sgd or sgdm (alpha 1e-3, beta1 0.9, beta2 0.999, eps 1e-8).
/// Throws ConfigError for an unknown name.
OptimizerConfig named_optimizer(std::string_view name);

std::string_view to_string(DecayMode mode);
DecayMode parse_decay_mode(std::string_view name);

}  // namespace adabench
