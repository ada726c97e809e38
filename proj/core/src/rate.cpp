#include "adabench/rate.hpp"

#include "adabench/errors.hpp"
#include "adabench/fit.hpp"
#include "adabench/rng.hpp"

namespace adabench {

RateReport nonconvex_rate_harness(const Problem& problem, const OptimizerConfig& config,
                                  const ParamVector& start, std::uint64_t horizon,
                                  const std::optional<StableNoiseSpec>& noise,
                                  std::uint64_t seed) {
  config.hp.validate();
  if (config.hp.alpha_schedule.kind != ScheduleKind::inverse_sqrt ||
      config.hp.beta1_schedule.kind != ScheduleKind::complement_inverse_sqrt) {
    throw ConfigError(
        "rate harness: needs alpha_kind = inverse_sqrt and beta1_kind = complement_inverse_sqrt");
  }
  if (horizon == 0) throw ConfigError("rate harness: horizon must be >= 1");
  if (start.size() != problem.dim()) throw StructuralError("rate harness: start has wrong dimension");

  std::optional<RngStream> rng;
  if (noise) {
    noise->validate();
    rng.emplace(derive_stream(seed, 0));
  }

  RateReport report;
  report.grad_sq.reserve(horizon + 1);
  report.running_average.reserve(horizon + 1);

  OptimizerState state(config.kernel, problem.dim());
  ParamVector theta = start;
  double total = 0.0;
  for (std::uint64_t t = 0;; ++t) {
    ParamVector g = problem.gradient(theta);
    const double sq = norm_sq(g);
    total += sq;
    report.grad_sq.push_back(sq);
    report.running_average.push_back(total / static_cast<double>(t + 1));
    if (t == horizon) break;
    if (rng && !noise->is_zero()) {
      const ParamVector zeta = sas_sample(*noise, *rng, g.size());
      for (std::size_t i = 0; i < g.size(); ++i) g[i] += zeta[i];
    }
    step(state, theta, g, config.hp);
  }
  report.slope = horizon >= 20 ? final_decade_slope(report.running_average, 0) : 0.0;
  report.final_params = std::move(theta);
  return report;
}

}  // namespace adabench
