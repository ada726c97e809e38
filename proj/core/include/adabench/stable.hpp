#pragma once

#include <cstddef>
#include <vector>

#include "adabench/param_vector.hpp"
#include "adabench/rng.hpp"

namespace adabench {

/// Symmetric alpha-stable noise with a diagonal scale.
///
/// `scale` holds either one entry (broadcast to every coordinate) or one
/// entry per coordinate. The characteristic function of a coordinate with
/// scale s is exp(-|s * lambda|^tail_index); tail_index = 2 is Gaussian with
/// standard deviation sqrt(2) * s and tail_index = 1 is Cauchy.
struct StableNoiseSpec {
  double tail_index = 2.0;
  std::vector<double> scale{1.0};

  static StableNoiseSpec isotropic(double tail_index, double scale) {
    return StableNoiseSpec{tail_index, {scale}};
  }

  /// Throws ParameterDomainError for tail_index outside (0, 2] or a negative
  /// scale.
  void validate() const;
  /// Scale for coordinate i; requires validate() and a compatible dim.
  double scale_at(std::size_t i) const { return scale.size() == 1 ? scale[0] : scale[i]; }
  bool is_zero() const;
};

/// One unit-scale SaS draw via the Chambers-Mallows-Stuck transform.
double sas_draw(double tail_index, RngStream& rng);

/// dim i.i.d. draws scaled per coordinate.
ParamVector sas_sample(const StableNoiseSpec& spec, RngStream& rng, std::size_t dim);

}  // namespace adabench
