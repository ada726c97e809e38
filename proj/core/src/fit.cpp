#include "adabench/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "adabench/errors.hpp"

namespace adabench {

LineFit ols(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw StructuralError("ols: need >= 2 paired points");
  const auto n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw StructuralError("ols: x values are all equal");
  const double slope = sxy / sxx;
  return {slope, my - slope * mx, x.size()};
}

double final_decade_slope(std::span<const double> series, std::size_t first_index,
                          std::size_t samples) {
  if (series.empty()) throw StructuralError("final_decade_slope: empty series");
  const std::size_t last = first_index + series.size() - 1;
  const std::size_t lo = std::max<std::size_t>({first_index, last / 10, 1});
  if (last <= lo) throw StructuralError("final_decade_slope: series too short");
  samples = std::max<std::size_t>(samples, 2);

  std::vector<double> xs;
  std::vector<double> ys;
  std::size_t previous = 0;
  const double log_lo = std::log(static_cast<double>(lo));
  const double log_hi = std::log(static_cast<double>(last));
  for (std::size_t k = 0; k < samples; ++k) {
    const double frac = static_cast<double>(k) / static_cast<double>(samples - 1);
    auto idx = static_cast<std::size_t>(std::llround(std::exp(log_lo + frac * (log_hi - log_lo))));
    idx = std::clamp(idx, lo, last);
    if (k > 0 && idx == previous) continue;
    previous = idx;
    const double value = series[idx - first_index];
    if (!(value > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    xs.push_back(std::log(static_cast<double>(idx)));
    ys.push_back(std::log(value));
  }
  return ols(xs, ys).slope;
}

}  // namespace adabench
