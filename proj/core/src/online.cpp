#include "adabench/online.hpp"

#include <cmath>
#include <string>

#include "adabench/errors.hpp"

namespace adabench {

OnlineConvexStream::OnlineConvexStream(std::vector<ParamVector> centers, double box_radius)
    : centers_(std::move(centers)), box_radius_(box_radius) {
  if (centers_.empty()) throw ConfigError("online stream: horizon must be >= 1");
  const std::size_t dim = centers_.front().size();
  if (dim == 0) throw ConfigError("online stream: dimension must be >= 1");

  // Neumaier-compensated mean keeps the comparator exact to rounding.
  comparator_ = ParamVector(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    double sum = 0.0;
    double comp = 0.0;
    for (const auto& c : centers_) {
      if (c.size() != dim) throw ConfigError("online stream: ragged centers");
      const double x = c[i];
      const double t = sum + x;
      comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
      sum = t;
    }
    comparator_[i] = (sum + comp) / static_cast<double>(centers_.size());
  }

  comparator_prefix_.reserve(centers_.size());
  double acc = 0.0;
  for (std::size_t t = 1; t <= centers_.size(); ++t) {
    acc += loss(t, comparator_);
    comparator_prefix_.push_back(acc);
  }
}

const ParamVector& OnlineConvexStream::center(std::size_t t) const {
  if (t == 0 || t > centers_.size()) {
    throw StructuralError("online stream: round " + std::to_string(t) + " outside 1.." +
                          std::to_string(centers_.size()));
  }
  return centers_[t - 1];
}

double OnlineConvexStream::loss(std::size_t t, const ParamVector& theta) const {
  const ParamVector& c = center(t);
  require_same_length(theta, c, "online loss");
  double s = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double d = theta[i] - c[i];
    s += d * d;
  }
  return 0.5 * s;
}

ParamVector OnlineConvexStream::gradient(std::size_t t, const ParamVector& theta) const {
  return theta - center(t);
}

OnlineConvexStream online_quadratic_stream(std::size_t dim, std::size_t horizon, RngStream& rng,
                                           double box_radius, double offset) {
  if (horizon == 0) throw ConfigError("online_quadratic_stream: horizon must be >= 1");
  if (dim == 0) throw ConfigError("online_quadratic_stream: dimension must be >= 1");
  std::vector<ParamVector> centers;
  centers.reserve(horizon);
  for (std::size_t t = 0; t < horizon; ++t) {
    ParamVector c(dim);
    for (auto& x : c) x = offset + rng.uniform(-box_radius, box_radius);
    centers.push_back(std::move(c));
  }
  return OnlineConvexStream(std::move(centers), box_radius);
}

}  // namespace adabench
