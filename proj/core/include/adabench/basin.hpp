#pragma once

#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "adabench/problems.hpp"

namespace adabench {

enum class BasinKind { double_well_flat_sharp, asymmetric_valley, plateau_slope_basin };

std::string_view to_string(BasinKind kind);
BasinKind parse_basin_kind(std::string_view name);

/// Shape parameters; each kind reads only the fields it needs.
struct BasinParams {
  /// Depth of every basin below the surrounding plateau.
  double depth = 1.0;
  // double_well_flat_sharp: flat basin at -1, sharp basin at +1.
  double flat_half_width = 0.6;
  double sharp_half_width = 0.6 / std::sqrt(10.0);
  // asymmetric_valley: minimum at 0, right side `asymmetry` times wider.
  double valley_half_width = 0.5;
  double asymmetry = 4.0;
  // plateau_slope_basin: plateau on [-2, 0), slope on [0, 2), basin at 3.
  double plateau_gradient = 5e-4;
  double slope_gradient = 1.0;
  /// Escape boundary as a fraction of the basin half-width.
  double escape_fraction = 0.9;
};

struct Basin {
  std::string name;
  double center = 0.0;
  double left_half_width = 0.0;
  double right_half_width = 0.0;
  /// f'' just right of the minimum.
  double curvature = 0.0;
};

struct Region {
  std::string name;
  double lo = 0.0;
  double hi = 0.0;
};

/// One-dimensional objective whose derivative is piecewise linear through a
/// set of knots (constant beyond the outer knots), so f is C^1 and piecewise
/// quadratic.
class BasinLandscape {
 public:
  BasinLandscape(BasinKind kind, std::vector<double> knots, std::vector<double> slopes,
                 std::vector<Basin> basins, std::vector<Region> regions, double escape_fraction);

  BasinKind kind() const noexcept { return kind_; }
  double value(double x) const;
  double derivative(double x) const;
  /// Piecewise constant; the right-hand value at knots.
  double second_derivative(double x) const;

  const std::vector<Basin>& basins() const noexcept { return basins_; }
  const std::vector<Region>& regions() const noexcept { return regions_; }
  /// Throws ConfigError for an unknown name.
  const Basin& basin(std::string_view name) const;
  /// Name of the region containing x, or "outside".
  std::string region_of(double x) const;

  /// True once x lies farther than escape_fraction * half-width (on the
  /// side x is on) from the basin minimum.
  bool escaped(const Basin& basin, double x) const;
  double escape_fraction() const noexcept { return escape_fraction_; }

  /// Problem view; declares an optimum when the landscape has a unique
  /// deepest basin.
  Problem problem() const;

 private:
  BasinKind kind_;
  std::vector<double> knots_;
  std::vector<double> slopes_;
  std::vector<double> values_;  // f at each knot
  std::vector<Basin> basins_;
  std::vector<Region> regions_;
  double escape_fraction_;
};

/// Builds the named landscape. Throws ConfigError for non-positive widths or
/// depths and when sharp_half_width >= flat_half_width.
BasinLandscape basin_landscape(BasinKind kind, const BasinParams& params = {});

}  // namespace adabench
