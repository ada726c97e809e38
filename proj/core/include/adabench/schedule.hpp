#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace adabench {

enum class ScheduleKind {
  constant,
  inverse_sqrt,             // x_t = x_1 / sqrt(t)
  exp_decay,                // x_t = x_1 * lambda^t
  step_decay,               // x_t = x_1 * factor^(number of milestones <= t)
  cosine,                   // floor + (x_1 - floor) * (1 + cos(pi * min(t, T) / T)) / 2
  complement_inverse_sqrt,  // x_t = 1 - (1 - x_1) / sqrt(t)
};

/// Per-step schedule applied to a base hyperparameter value.
struct ScheduleSpec {
  ScheduleKind kind = ScheduleKind::constant;
  double lambda = 0.0;
  std::vector<std::uint64_t> milestones;
  double factor = 1.0;
  std::uint64_t t_max = 0;
  double floor = 0.0;

  static ScheduleSpec constant() { return {}; }
  static ScheduleSpec of_kind(ScheduleKind kind) {
    ScheduleSpec s;
    s.kind = kind;
    return s;
  }
  static ScheduleSpec inverse_sqrt() { return of_kind(ScheduleKind::inverse_sqrt); }
  static ScheduleSpec exp_decay(double lambda) {
    ScheduleSpec s = of_kind(ScheduleKind::exp_decay);
    s.lambda = lambda;
    return s;
  }
  static ScheduleSpec step_decay(std::vector<std::uint64_t> milestones, double factor) {
    ScheduleSpec s = of_kind(ScheduleKind::step_decay);
    s.milestones = std::move(milestones);
    s.factor = factor;
    return s;
  }
  static ScheduleSpec cosine(std::uint64_t t_max, double floor) {
    ScheduleSpec s = of_kind(ScheduleKind::cosine);
    s.t_max = t_max;
    s.floor = floor;
    return s;
  }
  static ScheduleSpec complement_inverse_sqrt() {
    return of_kind(ScheduleKind::complement_inverse_sqrt);
  }

  bool is_constant() const noexcept { return kind == ScheduleKind::constant; }

  /// Throws ConfigError on lambda outside (0,1), t_max == 0, factor <= 0 or
  /// unsorted milestones.
  void validate() const;

  bool operator==(const ScheduleSpec&) const = default;
};

/// Scheduled value at step t (t >= 1).
double schedule_value(const ScheduleSpec& spec, double base, std::uint64_t t);

std::string_view to_string(ScheduleKind kind);
/// Throws ConfigError for an unknown name.
ScheduleKind parse_schedule_kind(std::string_view name);

}  // namespace adabench
