#include "adabench/finite_diff.hpp"

#include <cmath>
#include <string>

#include "adabench/errors.hpp"

namespace adabench {

ParamVector finite_diff_grad(const ScalarFunction& f, const ParamVector& x, double h) {
  if (!(h > 0.0)) throw ConfigError("finite_diff_grad: step must be positive");
  ParamVector probe = x;
  ParamVector grad(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = x[i];
    probe[i] = xi + h;
    const double up = f(probe);
    probe[i] = xi - h;
    const double down = f(probe);
    probe[i] = xi;
    if (!std::isfinite(up) || !std::isfinite(down)) {
      throw EvaluationError("finite_diff_grad: non-finite evaluation at coordinate " +
                                std::to_string(i),
                            i);
    }
    grad[i] = (up - down) / (2.0 * h);
  }
  return grad;
}

}  // namespace adabench
