#include "adabench/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "adabench/errors.hpp"
#include "adabench/rng.hpp"

namespace adabench {

namespace {

void summarize_stepsize(const ParamVector& eff, StepRecord& rec) {
  if (eff.empty()) return;
  double lo = eff[0];
  double hi = eff[0];
  double sum = 0.0;
  for (double e : eff) {
    lo = std::min(lo, e);
    hi = std::max(hi, e);
    sum += e;
  }
  rec.eff_step_min = lo;
  rec.eff_step_max = hi;
  rec.eff_step_mean = sum / static_cast<double>(eff.size());
}

}  // namespace

Trajectory run(const Problem& problem, const OptimizerConfig& config, const ParamVector& start,
               std::uint64_t steps, const RunOptions& options) {
  if (steps == 0) throw ConfigError("run: steps must be >= 1");
  if (options.record_every == 0) throw ConfigError("run: record_every must be >= 1");
  config.hp.validate();
  if (start.size() != problem.dim()) throw StructuralError("run: start has wrong dimension");

  std::optional<RngStream> noise_rng;
  if (options.noise) {
    options.noise->validate();
    noise_rng.emplace(derive_stream(options.seed, 0));
  }

  Trajectory traj;
  OptimizerState state(config.kernel, problem.dim());
  ParamVector theta = start;
  ParamVector grad = problem.gradient(theta);

  for (std::uint64_t t = 1; t <= steps; ++t) {
    ParamVector step_grad = grad;
    if (noise_rng && !options.noise->is_zero()) {
      const ParamVector zeta = sas_sample(*options.noise, *noise_rng, theta.size());
      for (std::size_t i = 0; i < zeta.size(); ++i) step_grad[i] += zeta[i];
    }
    if (!all_finite(step_grad)) {
      traj.failure = RunFailure{t, "non-finite gradient"};
      break;
    }
    step(state, theta, step_grad, config.hp);
    traj.steps_taken = t;

    const double loss = problem.value(theta);
    grad = problem.gradient(theta);
    if (!std::isfinite(loss)) {
      traj.failure = RunFailure{t, "non-finite loss"};
      break;
    }
    if (!all_finite(grad)) {
      traj.failure = RunFailure{t, "non-finite gradient"};
      break;
    }

    if (t % options.record_every == 0 || t == steps) {
      StepRecord rec;
      rec.t = t;
      rec.loss = loss;
      rec.grad_sq_norm = norm_sq(grad);
      summarize_stepsize(effective_stepsize(state, config.hp), rec);
      rec.alpha_t = schedule_value(config.hp.alpha_schedule, config.hp.alpha, t);
      rec.beta1_t = schedule_value(config.hp.beta1_schedule, config.hp.beta1, t);
      traj.records.push_back(rec);
      if (options.record_params) traj.params.push_back(theta);
    }
  }
  traj.final_params = std::move(theta);
  return traj;
}

std::vector<RaceResult> race(const Problem& problem, std::span<const RaceEntry> entries,
                             const ParamVector& start, std::uint64_t steps, double threshold) {
  if (!problem.optimum()) throw ConfigError("race: problem has no known optimum");
  if (!(threshold > 0.0)) throw ConfigError("race: threshold must be positive");
  if (steps == 0) throw ConfigError("race: steps must be >= 1");
  const Optimum& opt = *problem.optimum();

  std::vector<RaceResult> results;
  results.reserve(entries.size());
  for (const auto& entry : entries) {
    entry.config.hp.validate();
    RaceResult res;
    res.label = entry.label;
    res.alpha = entry.config.hp.alpha;
    res.start_distance = norm(start - opt.theta);
    res.max_distance = res.start_distance;

    OptimizerState state(entry.config.kernel, problem.dim());
    ParamVector theta = start;
    double gap = problem.value(theta) - opt.value;
    if (gap <= threshold) res.steps_to_threshold = 1;

    for (std::uint64_t t = 1; t <= steps; ++t) {
      const ParamVector g = problem.gradient(theta);
      if (!all_finite(g)) {
        res.diverged = true;
        break;
      }
      step(state, theta, g, entry.config.hp);
      gap = problem.value(theta) - opt.value;
      if (!std::isfinite(gap)) {
        res.diverged = true;
        break;
      }
      res.max_distance = std::max(res.max_distance, norm(theta - opt.theta));
      if (!res.steps_to_threshold && gap <= threshold) res.steps_to_threshold = t;
    }
    res.final_gap = gap;
    results.push_back(std::move(res));
  }
  return results;
}

}  // namespace adabench
