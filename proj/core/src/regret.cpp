#include "adabench/regret.hpp"

#include "adabench/errors.hpp"
#include "adabench/fit.hpp"

namespace adabench {

RegretReport regret_harness(const OnlineConvexStream& stream, const OptimizerConfig& config,
                            const ParamVector& start) {
  config.hp.validate();
  if (config.hp.alpha_schedule.kind != ScheduleKind::inverse_sqrt ||
      config.hp.beta1_schedule.kind != ScheduleKind::exp_decay) {
    throw ConfigError(
        "regret harness: needs alpha_kind = inverse_sqrt and beta1_kind = exp_decay");
  }
  if (start.size() != stream.dim()) throw StructuralError("regret harness: start has wrong dimension");

  const std::size_t horizon = stream.horizon();
  RegretReport report;
  report.learner_loss.reserve(horizon);
  report.regret.reserve(horizon);
  report.regret_over_t.reserve(horizon);

  OptimizerState state(config.kernel, stream.dim());
  ParamVector theta = start;
  double accumulated = 0.0;
  for (std::size_t t = 1; t <= horizon; ++t) {
    const double paid = stream.loss(t, theta);
    accumulated += paid - stream.loss(t, stream.comparator());
    report.learner_loss.push_back(paid);
    report.regret.push_back(accumulated);
    report.regret_over_t.push_back(accumulated / static_cast<double>(t));
    step(state, theta, stream.gradient(t, theta), config.hp);
  }
  report.slope = horizon >= 20 ? final_decade_slope(report.regret_over_t, 1) : 0.0;
  report.final_params = std::move(theta);
  return report;
}

std::vector<double> recompute_regret(const OnlineConvexStream& stream,
                                     std::span<const double> learner_loss) {
  if (learner_loss.size() != stream.horizon()) {
    throw StructuralError("recompute_regret: one loss per round required");
  }
  const auto& comparator = stream.comparator_prefix_loss();
  std::vector<double> out(learner_loss.size());
  double paid = 0.0;
  for (std::size_t i = 0; i < learner_loss.size(); ++i) {
    paid += learner_loss[i];
    out[i] = paid - comparator[i];
  }
  return out;
}

}  // namespace adabench
