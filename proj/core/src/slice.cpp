#include "adabench/slice.hpp"

#include <cmath>
#include <numbers>

#include "adabench/errors.hpp"

namespace adabench {

namespace {

void check_directions(const ParamVector& center, const SliceDirections& dirs) {
  require_same_length(center, dirs.d1, "slice d1");
  require_same_length(center, dirs.d2, "slice d2");
  if (std::abs(norm(dirs.d1) - 1.0) > 1e-9 || std::abs(norm(dirs.d2) - 1.0) > 1e-9 ||
      std::abs(dot(dirs.d1, dirs.d2)) > 1e-9) {
    throw ConfigError("slice: directions must be orthonormal");
  }
}

ParamVector point(const ParamVector& center, const SliceDirections& dirs, double a, double b) {
  ParamVector p = center;
  for (std::size_t i = 0; i < p.size(); ++i) p[i] += a * dirs.d1[i] + b * dirs.d2[i];
  return p;
}

}  // namespace

SliceDirections random_directions(std::size_t dim, RngStream& rng) {
  if (dim < 2) throw ConfigError("random_directions: need dim >= 2");
  ParamVector d1(dim);
  ParamVector d2(dim);
  for (auto& x : d1) x = rng.normal();
  for (auto& x : d2) x = rng.normal();
  d1 = (1.0 / norm(d1)) * d1;
  axpy(-dot(d1, d2), d1, d2);
  d2 = (1.0 / norm(d2)) * d2;
  return {std::move(d1), std::move(d2)};
}

LossSlice loss_slice(const ScalarFunction& f, const ParamVector& center,
                     const SliceDirections& dirs, std::size_t grid_points, double radius) {
  check_directions(center, dirs);
  if (grid_points < 2) throw ConfigError("slice: need at least 2 grid points");
  if (!(radius > 0.0)) throw ConfigError("slice: radius must be positive");

  LossSlice slice;
  const auto span = static_cast<double>(grid_points - 1);
  for (std::size_t i = 0; i < grid_points; ++i) {
    // Integer numerator keeps the middle node at exactly zero.
    const double k = 2.0 * static_cast<double>(i) - span;
    slice.offsets.push_back(radius * k / span);
  }
  slice.values.reserve(grid_points * grid_points);
  for (double a : slice.offsets) {
    for (double b : slice.offsets) slice.values.push_back(f(point(center, dirs, a, b)));
  }
  slice.center_value = f(center);
  return slice;
}

double flatness_score(const ScalarFunction& f, const ParamVector& center,
                      const SliceDirections& dirs, double radius, std::size_t angles) {
  check_directions(center, dirs);
  if (angles == 0) throw ConfigError("flatness_score: need at least one angle");
  const double base = f(center);
  double sum = 0.0;
  for (std::size_t k = 0; k < angles; ++k) {
    const double phi = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(angles);
    sum += f(point(center, dirs, radius * std::cos(phi), radius * std::sin(phi))) - base;
  }
  return sum / static_cast<double>(angles);
}

}  // namespace adabench
