#pragma once

#include <functional>

#include "adabench/param_vector.hpp"

namespace adabench {

using ScalarFunction = std::function<double(const ParamVector&)>;

inline constexpr double kDefaultFiniteDiffStep = 1e-5;

/// Central-difference gradient, (f(x + h e_i) - f(x - h e_i)) / (2h).
/// Throws EvaluationError naming the coordinate if an evaluation is not
/// finite, ConfigError if h <= 0.
ParamVector finite_diff_grad(const ScalarFunction& f, const ParamVector& x,
                             double h = kDefaultFiniteDiffStep);

}  // namespace adabench
