#include "adabench/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "adabench/errors.hpp"

namespace adabench {

void ScheduleSpec::validate() const {
  switch (kind) {
    case ScheduleKind::exp_decay:
      if (!(lambda > 0.0 && lambda < 1.0)) {
        throw ConfigError("exp_decay schedule: lambda must lie in (0, 1), got " +
                          std::to_string(lambda));
      }
      break;
    case ScheduleKind::step_decay:
      if (!(factor > 0.0)) throw ConfigError("step_decay schedule: factor must be positive");
      if (!std::is_sorted(milestones.begin(), milestones.end())) {
        throw ConfigError("step_decay schedule: milestones must be ascending");
      }
      break;
    case ScheduleKind::cosine:
      if (t_max == 0) throw ConfigError("cosine schedule: t_max must be positive");
      break;
    default:
      break;
  }
}

double schedule_value(const ScheduleSpec& spec, double base, std::uint64_t t) {
  if (t == 0) throw ConfigError("schedule_value: step index starts at 1");
  spec.validate();
  const double td = static_cast<double>(t);
  switch (spec.kind) {
    case ScheduleKind::constant:
      return base;
    case ScheduleKind::inverse_sqrt:
      return base / std::sqrt(td);
    case ScheduleKind::exp_decay:
      return base * std::pow(spec.lambda, td);
    case ScheduleKind::step_decay: {
      const auto passed = std::count_if(spec.milestones.begin(), spec.milestones.end(),
                                        [t](std::uint64_t m) { return t >= m; });
      return base * std::pow(spec.factor, static_cast<double>(passed));
    }
    case ScheduleKind::cosine: {
      const double frac = static_cast<double>(std::min(t, spec.t_max)) /
                          static_cast<double>(spec.t_max);
      return spec.floor + (base - spec.floor) * 0.5 * (1.0 + std::cos(std::numbers::pi * frac));
    }
    case ScheduleKind::complement_inverse_sqrt:
      return 1.0 - (1.0 - base) / std::sqrt(td);
  }
  return base;
}

std::string_view to_string(ScheduleKind kind) {
  switch (kind) {
    case ScheduleKind::constant: return "constant";
    case ScheduleKind::inverse_sqrt: return "inverse_sqrt";
    case ScheduleKind::exp_decay: return "exp_decay";
    case ScheduleKind::step_decay: return "step_decay";
    case ScheduleKind::cosine: return "cosine";
    case ScheduleKind::complement_inverse_sqrt: return "complement_inverse_sqrt";
  }
  return "constant";
}

ScheduleKind parse_schedule_kind(std::string_view name) {
  for (auto k : {ScheduleKind::constant, ScheduleKind::inverse_sqrt, ScheduleKind::exp_decay,
                 ScheduleKind::step_decay, ScheduleKind::cosine,
                 ScheduleKind::complement_inverse_sqrt}) {
    if (to_string(k) == name) return k;
  }
  throw ConfigError("unknown schedule kind '" + std::string(name) + "'");
}

}  // namespace adabench
