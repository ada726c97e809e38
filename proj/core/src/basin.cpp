#include "adabench/basin.hpp"

#include <algorithm>
#include <string>

#include "adabench/errors.hpp"

namespace adabench {

std::string_view to_string(BasinKind kind) {
  switch (kind) {
    case BasinKind::double_well_flat_sharp: return "double_well_flat_sharp";
    case BasinKind::asymmetric_valley: return "asymmetric_valley";
    case BasinKind::plateau_slope_basin: return "plateau_slope_basin";
  }
  return "double_well_flat_sharp";
}

BasinKind parse_basin_kind(std::string_view name) {
  for (auto k : {BasinKind::double_well_flat_sharp, BasinKind::asymmetric_valley,
                 BasinKind::plateau_slope_basin}) {
    if (to_string(k) == name) return k;
  }
  throw ConfigError("unknown landscape kind '" + std::string(name) + "'");
}

BasinLandscape::BasinLandscape(BasinKind kind, std::vector<double> knots,
                               std::vector<double> slopes, std::vector<Basin> basins,
                               std::vector<Region> regions, double escape_fraction)
    : kind_(kind),
      knots_(std::move(knots)),
      slopes_(std::move(slopes)),
      basins_(std::move(basins)),
      regions_(std::move(regions)),
      escape_fraction_(escape_fraction) {
  if (knots_.size() < 2 || knots_.size() != slopes_.size()) {
    throw ConfigError("landscape: need matching knots and slopes");
  }
  for (std::size_t i = 1; i < knots_.size(); ++i) {
    if (!(knots_[i] > knots_[i - 1])) throw ConfigError("landscape: knots must increase");
  }
  if (!(escape_fraction_ > 0.0 && escape_fraction_ <= 1.0)) {
    throw ConfigError("landscape: escape_fraction must lie in (0, 1]");
  }
  values_.assign(knots_.size(), 0.0);
  for (std::size_t i = 1; i < knots_.size(); ++i) {
    values_[i] = values_[i - 1] + 0.5 * (slopes_[i] + slopes_[i - 1]) * (knots_[i] - knots_[i - 1]);
  }
}

double BasinLandscape::derivative(double x) const {
  if (x <= knots_.front()) return slopes_.front();
  if (x >= knots_.back()) return slopes_.back();
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
  const auto i = static_cast<std::size_t>(it - knots_.begin());
  const double u = (x - knots_[i - 1]) / (knots_[i] - knots_[i - 1]);
  return slopes_[i - 1] + u * (slopes_[i] - slopes_[i - 1]);
}

double BasinLandscape::value(double x) const {
  if (x <= knots_.front()) return values_.front() + slopes_.front() * (x - knots_.front());
  if (x >= knots_.back()) return values_.back() + slopes_.back() * (x - knots_.back());
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
  const auto i = static_cast<std::size_t>(it - knots_.begin());
  const double dx = x - knots_[i - 1];
  const double curv = (slopes_[i] - slopes_[i - 1]) / (knots_[i] - knots_[i - 1]);
  return values_[i - 1] + slopes_[i - 1] * dx + 0.5 * curv * dx * dx;
}

double BasinLandscape::second_derivative(double x) const {
  if (x < knots_.front() || x >= knots_.back()) return 0.0;
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
  const auto i = static_cast<std::size_t>(it - knots_.begin());
  return (slopes_[i] - slopes_[i - 1]) / (knots_[i] - knots_[i - 1]);
}

const Basin& BasinLandscape::basin(std::string_view name) const {
  for (const auto& b : basins_) {
    if (b.name == name) return b;
  }
  throw ConfigError("landscape has no basin named '" + std::string(name) + "'");
}

std::string BasinLandscape::region_of(double x) const {
  for (const auto& r : regions_) {
    if (x >= r.lo && x < r.hi) return r.name;
  }
  return "outside";
}

bool BasinLandscape::escaped(const Basin& b, double x) const {
  const double d = x - b.center;
  return d < 0.0 ? -d > escape_fraction_ * b.left_half_width
                 : d > escape_fraction_ * b.right_half_width;
}

Problem BasinLandscape::problem() const {
  std::optional<Optimum> optimum;
  if (basins_.size() == 1) {
    optimum = Optimum{ParamVector{basins_.front().center}, value(basins_.front().center)};
  }
  const BasinLandscape self = *this;
  return Problem(
      std::string(to_string(kind_)), 1,
      [self](const ParamVector& x) { return self.value(x[0]); },
      [self](const ParamVector& x) { return ParamVector{self.derivative(x[0])}; },
      std::move(optimum));
}

namespace {

// Derivative knots for a basin of the given depth: f' dips to -g at the
// left quarter point, crosses zero at the center, peaks at +g on the right.
void append_basin(std::vector<double>& knots, std::vector<double>& slopes, double center,
                  double left, double right, double depth) {
  const double g_left = 2.0 * depth / left;
  const double g_right = 2.0 * depth / right;
  for (auto [x, s] : {std::pair{center - left, 0.0}, std::pair{center - left / 2, -g_left},
                      std::pair{center, 0.0}, std::pair{center + right / 2, g_right},
                      std::pair{center + right, 0.0}}) {
    if (!knots.empty() && x <= knots.back()) throw ConfigError("landscape: basins overlap");
    knots.push_back(x);
    slopes.push_back(s);
  }
}

}  // namespace

BasinLandscape basin_landscape(BasinKind kind, const BasinParams& p) {
  if (!(p.depth > 0.0)) throw ConfigError("landscape: depth must be positive");
  std::vector<double> knots;
  std::vector<double> slopes;
  std::vector<Basin> basins;
  std::vector<Region> regions;

  switch (kind) {
    case BasinKind::double_well_flat_sharp: {
      if (!(p.flat_half_width > 0.0) || !(p.sharp_half_width > 0.0)) {
        throw ConfigError("double well: half-widths must be positive");
      }
      if (p.sharp_half_width >= p.flat_half_width) {
        throw ConfigError("double well: sharp_half_width must be smaller than flat_half_width");
      }
      append_basin(knots, slopes, -1.0, p.flat_half_width, p.flat_half_width, p.depth);
      append_basin(knots, slopes, 1.0, p.sharp_half_width, p.sharp_half_width, p.depth);
      const double kf = 4.0 * p.depth / (p.flat_half_width * p.flat_half_width);
      const double ks = 4.0 * p.depth / (p.sharp_half_width * p.sharp_half_width);
      basins = {{"flat", -1.0, p.flat_half_width, p.flat_half_width, kf},
                {"sharp", 1.0, p.sharp_half_width, p.sharp_half_width, ks}};
      regions = {{"flat", -1.0 - p.flat_half_width, -1.0 + p.flat_half_width},
                 {"sharp", 1.0 - p.sharp_half_width, 1.0 + p.sharp_half_width}};
      break;
    }
    case BasinKind::asymmetric_valley: {
      if (!(p.valley_half_width > 0.0) || !(p.asymmetry > 0.0)) {
        throw ConfigError("asymmetric valley: width and asymmetry must be positive");
      }
      const double left = p.valley_half_width;
      const double right = p.valley_half_width * p.asymmetry;
      append_basin(knots, slopes, 0.0, left, right, p.depth);
      basins = {{"valley", 0.0, left, right, 4.0 * p.depth / (right * right)}};
      regions = {{"valley", -left, right}};
      break;
    }
    case BasinKind::plateau_slope_basin: {
      if (!(p.plateau_gradient >= 0.0) || !(p.slope_gradient > p.plateau_gradient)) {
        throw ConfigError("plateau_slope_basin: need 0 <= plateau_gradient < slope_gradient");
      }
      const double s = p.slope_gradient;
      knots = {-2.0, 0.0, 0.2, 2.0, 3.0, 4.0, 5.0};
      slopes = {-p.plateau_gradient, -p.plateau_gradient, -s, -s, 0.0, s, 0.0};
      basins = {{"basin", 3.0, 1.0, 1.0, s}};
      regions = {{"plateau", -2.0, 0.0}, {"slope", 0.0, 2.0}, {"basin", 2.0, 4.0}};
      break;
    }
  }
  return BasinLandscape(kind, std::move(knots), std::move(slopes), std::move(basins),
                        std::move(regions), p.escape_fraction);
}

}  // namespace adabench
