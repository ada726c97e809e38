#pragma once

#include <cstddef>
#include <span>

namespace adabench {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  std::size_t points = 0;
};

/// Ordinary least squares y = slope * x + intercept. Needs >= 2 points.
LineFit ols(std::span<const double> x, std::span<const double> y);

/// Log-log slope of a series over its final decade.
///
/// series[i] is the value at index T' = first_index + i. The fit uses
/// `samples` log-spaced indices in [T/10, T] (T the last index), so each
/// part of the decade carries equal weight; indices below 10% of T are never
/// used. Returns NaN when a sampled value is not strictly positive.
double final_decade_slope(std::span<const double> series, std::size_t first_index = 1,
                          std::size_t samples = 64);

}  // namespace adabench
