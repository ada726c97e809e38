#pragma once

#include <cstddef>
#include <vector>

#include "adabench/finite_diff.hpp"
#include "adabench/param_vector.hpp"
#include "adabench/rng.hpp"

namespace adabench {

struct SliceDirections {
  ParamVector d1;
  ParamVector d2;
};

/// Two Gaussian directions made orthonormal by Gram-Schmidt. dim >= 2.
SliceDirections random_directions(std::size_t dim, RngStream& rng);

/// Loss on the grid center + a d1 + b d2, a and b in [-radius, radius].
struct LossSlice {
  std::vector<double> offsets;  // grid coordinates, shared by both axes
  std::vector<double> values;   // row-major, values[i * n + j] at (offsets[i], offsets[j])
  double center_value = 0.0;

  std::size_t points() const noexcept { return offsets.size(); }
  double at(std::size_t i, std::size_t j) const { return values[i * offsets.size() + j]; }
};

/// Throws ConfigError unless the directions are orthonormal to 1e-9,
/// grid_points >= 2 and radius > 0. An odd grid puts the center on a node.
LossSlice loss_slice(const ScalarFunction& f, const ParamVector& center,
                     const SliceDirections& dirs, std::size_t grid_points, double radius);

/// Mean of f(center + radius (cos phi d1 + sin phi d2)) - f(center) over
/// `angles` equally spaced phi.
double flatness_score(const ScalarFunction& f, const ParamVector& center,
                      const SliceDirections& dirs, double radius, std::size_t angles = 64);

}  // namespace adabench
