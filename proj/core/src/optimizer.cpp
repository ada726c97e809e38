#include "adabench/optimizer.hpp"

#include <cmath>
#include <string>

#include "adabench/errors.hpp"

namespace adabench {

void HyperParams::validate() const {
  if (!(alpha > 0.0)) throw ConfigError("alpha must be positive");
  if (!(beta1 >= 0.0 && beta1 < 1.0)) throw ConfigError("beta1 must lie in [0, 1)");
  if (!(beta2 >= 0.0 && beta2 < 1.0)) throw ConfigError("beta2 must lie in [0, 1)");
  if (!(epsilon >= 0.0)) throw ConfigError("epsilon must be non-negative");
  if (!(weight_decay >= 0.0)) throw ConfigError("weight_decay must be non-negative");
  alpha_schedule.validate();
  beta1_schedule.validate();
}

namespace {

struct StepScalars {
  double alpha_t;
  double beta1_t;
  double bc1;  // first-moment debias denominator
  double bc2;  // second-moment debias denominator
};

// Debias denominators for a state that has already advanced to t.
StepScalars scalars_at(const OptimizerState& state, const HyperParams& hp) {
  const auto t = state.t;
  StepScalars s{};
  s.alpha_t = schedule_value(hp.alpha_schedule, hp.alpha, t);
  s.beta1_t = schedule_value(hp.beta1_schedule, hp.beta1, t);
  const auto& k = state.kernel;
  s.bc1 = 1.0;
  s.bc2 = 1.0;
  if (k.bias_correction && k.first_moment_ema) {
    const double prod = hp.beta1_schedule.is_constant()
                            ? std::pow(hp.beta1, static_cast<double>(t))
                            : state.beta1_product;
    s.bc1 = 1.0 - prod;
  }
  if (k.bias_correction) s.bc2 = 1.0 - std::pow(hp.beta2, static_cast<double>(t));
  return s;
}

double denominator(const KernelSpec& k, double v, double bc2, double eps) {
  if (k.second_moment_input == SecondMomentInput::none) return 1.0;
  const double v_hat = v / bc2;
  return k.eps_placement == EpsPlacement::inside_accumulator ? std::sqrt(v_hat)
                                                             : std::sqrt(v_hat) + eps;
}

}  // namespace

void step(OptimizerState& state, ParamVector& params, const ParamVector& grad,
          const HyperParams& hp) {
  require_same_length(params, grad, "step(params, grad)");
  require_same_length(params, state.m, "step(params, m)");
  require_same_length(params, state.v, "step(params, v)");
  if (const auto bad = first_non_finite(grad); bad != grad.size()) {
    throw EvaluationError("step: non-finite gradient at coordinate " + std::to_string(bad), bad);
  }

  state.t += 1;
  const double beta1_t = schedule_value(hp.beta1_schedule, hp.beta1, state.t);
  if (!hp.beta1_schedule.is_constant()) state.beta1_product *= beta1_t;
  const StepScalars s = scalars_at(state, hp);

  const KernelSpec& k = state.kernel;
  const double b1 = s.beta1_t;
  const double b2 = hp.beta2;
  const double eps = hp.epsilon;
  const double wd = hp.weight_decay;
  const bool inside = k.eps_placement == EpsPlacement::inside_accumulator;

  for (std::size_t i = 0; i < params.size(); ++i) {
    const double theta = params[i];
    double g = grad[i];
    if (hp.decay_mode == DecayMode::coupled) g += wd * theta;

    double& m = state.m[i];
    double& v = state.v[i];
    m = k.first_moment_ema ? b1 * m + (1.0 - b1) * g : g;

    double update = 0.0;
    if (k.sign_only) {
      v = g * g;
      update = g > 0.0 ? s.alpha_t : (g < 0.0 ? -s.alpha_t : 0.0);
    } else {
      double kt = 0.0;
      switch (k.second_moment_input) {
        case SecondMomentInput::raw_grad: kt = g; break;
        case SecondMomentInput::momentum: kt = m; break;
        case SecondMomentInput::grad_minus_momentum: kt = g - m; break;
        case SecondMomentInput::none: break;
      }
      if (k.second_moment_input != SecondMomentInput::none) {
        v = b2 * v + (1.0 - b2) * (kt * kt);
        if (inside) v = v + eps;
      }
      const double m_hat = m / s.bc1;
      const double den = denominator(k, v, s.bc2, eps);
      if (den > 0.0) update = s.alpha_t * m_hat / den;
    }

    params[i] = theta - update;
    if (hp.decay_mode == DecayMode::decoupled) params[i] -= s.alpha_t * wd * theta;
  }
}

ParamVector effective_stepsize(const OptimizerState& state, const HyperParams& hp) {
  if (state.t == 0) throw StateError("effective_stepsize: no step has been taken");
  const StepScalars s = scalars_at(state, hp);
  const KernelSpec& k = state.kernel;
  ParamVector out(state.v.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double den = k.sign_only ? std::sqrt(state.v[i])
                                   : denominator(k, state.v[i], s.bc2, hp.epsilon);
    out[i] = den > 0.0 ? s.alpha_t / den : 0.0;
  }
  return out;
}

DebiasedMoments debiased_moments(const OptimizerState& state, const HyperParams& hp) {
  if (state.t == 0) throw StateError("debiased_moments: no step has been taken");
  const StepScalars s = scalars_at(state, hp);
  DebiasedMoments out{ParamVector(state.m.size()), ParamVector(state.v.size())};
  for (std::size_t i = 0; i < state.m.size(); ++i) out.m_hat[i] = state.m[i] / s.bc1;
  for (std::size_t i = 0; i < state.v.size(); ++i) out.v_hat[i] = state.v[i] / s.bc2;
  return out;
}

const std::vector<std::string>& optimizer_names() {
  static const std::vector<std::string> names = {"adamomentum", "adam", "adamw", "adabelief",
                                                 "rmsprop",     "rprop", "sgd",  "sgdm"};
  return names;
}

OptimizerConfig named_optimizer(std::string_view name) {
  OptimizerConfig cfg;
  cfg.name = std::string(name);
  if (name == "adamomentum") {
    cfg.kernel = KernelSpec::adamomentum();
  } else if (name == "adam") {
    cfg.kernel = KernelSpec::adam();
  } else if (name == "adamw") {
    cfg.kernel = KernelSpec::adam();
    cfg.hp.decay_mode = DecayMode::decoupled;
  } else if (name == "adabelief") {
    cfg.kernel = KernelSpec::adabelief();
  } else if (name == "rmsprop") {
    cfg.kernel = KernelSpec::rmsprop();
  } else if (name == "rprop") {
    cfg.kernel = KernelSpec::rprop();
  } else if (name == "sgd") {
    cfg.kernel = KernelSpec::sgd();
  } else if (name == "sgdm") {
    cfg.kernel = KernelSpec::sgdm();
  } else {
    throw ConfigError("unknown optimizer '" + std::string(name) + "'");
  }
  return cfg;
}

std::string_view to_string(DecayMode mode) {
  switch (mode) {
    case DecayMode::none: return "none";
    case DecayMode::coupled: return "coupled";
    case DecayMode::decoupled: return "decoupled";
  }
  return "none";
}

DecayMode parse_decay_mode(std::string_view name) {
  if (name == "none") return DecayMode::none;
  if (name == "coupled") return DecayMode::coupled;
  if (name == "decoupled") return DecayMode::decoupled;
  throw ConfigError("unknown decay_mode '" + std::string(name) + "'");
}

}  // namespace adabench
