#include "adabench/noisy.hpp"

#include <string>

#include "adabench/errors.hpp"

namespace adabench {

NoisyProblem::NoisyProblem(Problem base, StableNoiseSpec noise, RngStream rng)
    : base_(std::move(base)), noise_(std::move(noise)), rng_(std::move(rng)) {
  noise_.validate();
  if (noise_.scale.size() != 1 && noise_.scale.size() != base_.dim()) {
    throw StructuralError("noisy problem: noise scale has " + std::to_string(noise_.scale.size()) +
                          " entries for dim " + std::to_string(base_.dim()));
  }
}

ParamVector NoisyProblem::noisy_grad(const ParamVector& theta) {
  ParamVector g = base_.gradient(theta);
  if (noise_.is_zero()) return g;
  const ParamVector zeta = sas_sample(noise_, rng_, g.size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] += zeta[i];
  return g;
}

}  // namespace adabench
