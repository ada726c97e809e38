#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>

#include "adabench/param_vector.hpp"

namespace adabench {

struct Optimum {
  ParamVector theta;
  double value = 0.0;
};

/// Deterministic objective with its gradient oracle.
class Problem {
 public:
  using Objective = std::function<double(const ParamVector&)>;
  using Gradient = std::function<ParamVector(const ParamVector&)>;

  /// Throws ConfigError when `optimum` is given but the gradient there is not
  /// zero to 1e-8 (infinity norm), or when the dimensions disagree.
  Problem(std::string name, std::size_t dim, Objective objective, Gradient gradient,
          std::optional<Optimum> optimum = std::nullopt);

  const std::string& name() const noexcept { return name_; }
  std::size_t dim() const noexcept { return dim_; }
  const std::optional<Optimum>& optimum() const noexcept { return optimum_; }

  /// Both throw StructuralError if theta has the wrong length.
  double value(const ParamVector& theta) const;
  ParamVector gradient(const ParamVector& theta) const;

 private:
  void check_dim(const ParamVector& theta) const;

  std::string name_;
  std::size_t dim_;
  Objective objective_;
  Gradient gradient_;
  std::optional<Optimum> optimum_;
};

/// f(x) = sum x_i^2, minimum 0 at the origin.
Problem sphere(std::size_t dim);

/// Chained Rosenbrock, sum 100 (x_{i+1} - x_i^2)^2 + (1 - x_i)^2; dim >= 2.
Problem rosenbrock(std::size_t dim);

/// f(x) = 0.5 x^T D x with D diagonal, log-spaced from 1 to condition_number.
/// Throws ConfigError when condition_number < 1.
Problem ill_conditioned_quadratic(std::size_t dim, double condition_number);

/// Constant objective with an identically zero gradient.
Problem constant_problem(std::size_t dim, double value = 0.0);

}  // namespace adabench
