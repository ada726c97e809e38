#include "adabench/monitor.hpp"

#include <numeric>

#include "adabench/errors.hpp"
#include "adabench/rng.hpp"

namespace adabench {

std::optional<std::uint64_t> burn_in_step(std::span<const double> fraction, double threshold) {
  std::size_t t = fraction.size();
  if (t == 0 || fraction[t - 1] < threshold) return std::nullopt;
  while (t > 0 && fraction[t - 1] >= threshold) --t;
  return t;
}

AssumptionMonitorReport assumption_monitor(const MonitorSetup& setup) {
  setup.spec.validate();
  setup.optimizer.hp.validate();
  if (setup.batch_size == 0) throw ConfigError("assumption monitor: batch_size must be >= 1");
  if (setup.dataset.size == 0) throw ConfigError("assumption monitor: empty dataset");

  AssumptionMonitorReport report;
  report.degenerate = setup.batch_size >= setup.dataset.size;
  report.fraction.reserve(setup.steps);
  report.noise_sq_mean.reserve(setup.steps);
  report.bound_mean.reserve(setup.steps);
  report.loss.reserve(setup.steps);

  RngStream init_rng = derive_stream(setup.seed, 0);
  RngStream batch_rng = derive_stream(setup.seed, 1);
  ParamVector weights = mlp_init(setup.spec, init_rng);
  OptimizerState state(setup.optimizer.kernel, weights.size());

  std::vector<std::size_t> order(setup.dataset.size);
  std::iota(order.begin(), order.end(), std::size_t{0});
  const std::size_t b = std::min(setup.batch_size, setup.dataset.size);

  for (std::uint64_t t = 1; t <= setup.steps; ++t) {
    const ForwardResult full = mlp_forward(setup.spec, weights, setup.dataset);
    const ParamVector full_grad = mlp_backward(setup.spec, weights, full.cache);

    ParamVector grad;
    if (report.degenerate) {
      grad = full_grad;
    } else {
      // Partial Fisher-Yates: the first b entries become the batch.
      for (std::size_t i = 0; i < b; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(batch_rng.below(order.size() - i));
        std::swap(order[i], order[j]);
      }
      const Batch mini = setup.dataset.subset(std::span(order).first(b));
      const ForwardResult fwd = mlp_forward(setup.spec, weights, mini);
      grad = mlp_backward(setup.spec, weights, fwd.cache);
    }

    const double beta1 = schedule_value(setup.optimizer.hp.beta1_schedule,
                                        setup.optimizer.hp.beta1, t);
    const double coef = beta1 / (2.0 - beta1);
    std::size_t satisfied = 0;
    double noise_sq = 0.0;
    double bound = 0.0;
    for (std::size_t i = 0; i < grad.size(); ++i) {
      const double zeta = grad[i] - full_grad[i];
      const double lhs = zeta * zeta;
      const double rhs = coef * state.m[i] * state.m[i];
      if (lhs <= rhs) ++satisfied;
      noise_sq += lhs;
      bound += rhs;
    }
    const auto dim = static_cast<double>(grad.size());
    report.fraction.push_back(static_cast<double>(satisfied) / dim);
    report.noise_sq_mean.push_back(noise_sq / dim);
    report.bound_mean.push_back(bound / dim);
    report.loss.push_back(full.loss);

    step(state, weights, grad, setup.optimizer.hp);
  }
  report.t0 = burn_in_step(report.fraction, setup.threshold);
  return report;
}

}  // namespace adabench
