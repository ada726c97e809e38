#include "adabench/stable.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "adabench/errors.hpp"

namespace adabench {

void StableNoiseSpec::validate() const {
  if (!(tail_index > 0.0 && tail_index <= 2.0)) {
    throw ParameterDomainError("stable noise: tail_index must lie in (0, 2], got " +
                               std::to_string(tail_index));
  }
  if (scale.empty()) throw ParameterDomainError("stable noise: empty scale");
  for (double s : scale) {
    if (!(s >= 0.0) || !std::isfinite(s)) {
      throw ParameterDomainError("stable noise: scale must be finite and >= 0");
    }
  }
}

bool StableNoiseSpec::is_zero() const {
  for (double s : scale) {
    if (s != 0.0) return false;
  }
  return true;
}

double sas_draw(double tail_index, RngStream& rng) {
  constexpr double half_pi = std::numbers::pi / 2.0;
  const double v = half_pi * (2.0 * rng.uniform_open() - 1.0);
  const double w = rng.exponential();
  if (tail_index == 1.0) return std::tan(v);
  if (tail_index == 2.0) return 2.0 * std::sin(v) * std::sqrt(w);
  const double a = tail_index;
  const double cos_v = std::cos(v);
  return std::sin(a * v) / std::pow(cos_v, 1.0 / a) *
         std::pow(std::cos(v - a * v) / w, (1.0 - a) / a);
}

ParamVector sas_sample(const StableNoiseSpec& spec, RngStream& rng, std::size_t dim) {
  spec.validate();
  if (dim == 0) throw StructuralError("sas_sample: dim must be >= 1");
  if (spec.scale.size() != 1 && spec.scale.size() != dim) {
    throw StructuralError("sas_sample: scale has " + std::to_string(spec.scale.size()) +
                          " entries for dim " + std::to_string(dim));
  }
  ParamVector out(dim);
  for (std::size_t i = 0; i < dim; ++i) out[i] = spec.scale_at(i) * sas_draw(spec.tail_index, rng);
  return out;
}

}  // namespace adabench
