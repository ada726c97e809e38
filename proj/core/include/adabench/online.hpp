#pragma once

#include <cstddef>
#include <vector>

#include "adabench/param_vector.hpp"
#include "adabench/rng.hpp"

namespace adabench {

/// Sequence of losses f_t(theta) = 0.5 ||theta - c_t||^2, t = 1..T.
///
/// The best fixed point in hindsight is the mean of the centers, so the
/// comparator and its cumulative loss are exact.
class OnlineConvexStream {
 public:
  /// Throws ConfigError for an empty sequence or ragged centers.
  explicit OnlineConvexStream(std::vector<ParamVector> centers, double box_radius = 0.0);

  std::size_t horizon() const noexcept { return centers_.size(); }
  std::size_t dim() const noexcept { return comparator_.size(); }
  /// Half-width of the box the centers were drawn from (0 if unknown).
  double box_radius() const noexcept { return box_radius_; }

  /// t is 1-based.
  const ParamVector& center(std::size_t t) const;
  double loss(std::size_t t, const ParamVector& theta) const;
  ParamVector gradient(std::size_t t, const ParamVector& theta) const;

  const ParamVector& comparator() const noexcept { return comparator_; }
  /// sum_{t <= T'} f_t(comparator) for T' = 1..T (prefix sums).
  const std::vector<double>& comparator_prefix_loss() const noexcept { return comparator_prefix_; }

 private:
  std::vector<ParamVector> centers_;
  double box_radius_;
  ParamVector comparator_;
  std::vector<double> comparator_prefix_;
};

/// Centers drawn uniformly from offset + [-box_radius, box_radius]^dim.
/// Throws ConfigError when horizon == 0 or dim == 0.
OnlineConvexStream online_quadratic_stream(std::size_t dim, std::size_t horizon, RngStream& rng,
                                           double box_radius = 1.0, double offset = 0.0);

}  // namespace adabench
