#include "adabench/problems.hpp"

#include <cmath>
#include <utility>

#include "adabench/errors.hpp"

namespace adabench {

Problem::Problem(std::string name, std::size_t dim, Objective objective, Gradient gradient,
                 std::optional<Optimum> optimum)
    : name_(std::move(name)),
      dim_(dim),
      objective_(std::move(objective)),
      gradient_(std::move(gradient)),
      optimum_(std::move(optimum)) {
  if (dim_ == 0) throw ConfigError(name_ + ": dimension must be >= 1");
  if (optimum_) {
    if (optimum_->theta.size() != dim_) throw ConfigError(name_ + ": optimum has wrong length");
    const ParamVector g = gradient_(optimum_->theta);
    if (g.size() != dim_ || !(max_abs(g) <= 1e-8)) {
      throw ConfigError(name_ + ": declared optimum is not stationary");
    }
  }
}

void Problem::check_dim(const ParamVector& theta) const {
  if (theta.size() != dim_) {
    throw StructuralError(name_ + ": expected " + std::to_string(dim_) + " coordinates, got " +
                          std::to_string(theta.size()));
  }
}

double Problem::value(const ParamVector& theta) const {
  check_dim(theta);
  return objective_(theta);
}

ParamVector Problem::gradient(const ParamVector& theta) const {
  check_dim(theta);
  return gradient_(theta);
}

Problem sphere(std::size_t dim) {
  return Problem(
      "sphere", dim, [](const ParamVector& x) { return norm_sq(x); },
      [](const ParamVector& x) { return 2.0 * x; }, Optimum{ParamVector(dim), 0.0});
}

Problem rosenbrock(std::size_t dim) {
  if (dim < 2) throw ConfigError("rosenbrock: dimension must be >= 2");
  auto f = [](const ParamVector& x) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
      const double a = x[i + 1] - x[i] * x[i];
      const double b = 1.0 - x[i];
      s += 100.0 * a * a + b * b;
    }
    return s;
  };
  auto g = [](const ParamVector& x) {
    ParamVector out(x.size());
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
      const double a = x[i + 1] - x[i] * x[i];
      out[i] += -400.0 * x[i] * a - 2.0 * (1.0 - x[i]);
      out[i + 1] += 200.0 * a;
    }
    return out;
  };
  return Problem("rosenbrock", dim, f, g, Optimum{ParamVector(dim, 1.0), 0.0});
}

Problem ill_conditioned_quadratic(std::size_t dim, double condition_number) {
  if (!(condition_number >= 1.0)) {
    throw ConfigError("ill_conditioned_quadratic: condition_number must be >= 1");
  }
  if (dim == 0) throw ConfigError("ill_conditioned_quadratic: dimension must be >= 1");
  ParamVector diag(dim, 1.0);
  for (std::size_t i = 1; i < dim; ++i) {
    const double frac = static_cast<double>(i) / static_cast<double>(dim - 1);
    diag[i] = std::pow(condition_number, frac);
  }
  if (dim > 1) diag[dim - 1] = condition_number;
  auto f = [diag](const ParamVector& x) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += diag[i] * x[i] * x[i];
    return 0.5 * s;
  };
  auto g = [diag](const ParamVector& x) {
    ParamVector out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = diag[i] * x[i];
    return out;
  };
  return Problem("quadratic", dim, f, g, Optimum{ParamVector(dim), 0.0});
}

Problem constant_problem(std::size_t dim, double value) {
  return Problem(
      "constant", dim, [value](const ParamVector&) { return value; },
      [dim](const ParamVector&) { return ParamVector(dim); });
}

}  // namespace adabench
