#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "adabench/param_vector.hpp"
#include "adabench/rng.hpp"

namespace adabench {

enum class Activation { tanh, relu };
enum class LossKind { mse, softmax_cross_entropy };

/// Fully connected network. widths = {input, hidden..., output}; the
/// activation is applied to every hidden layer, the output layer is linear.
///
/// Flat weight layout, layer by layer: W (out x in, row-major) then b (out).
struct MlpSpec {
  std::vector<std::size_t> widths;
  Activation activation = Activation::tanh;
  LossKind loss = LossKind::mse;

  std::size_t layers() const noexcept { return widths.empty() ? 0 : widths.size() - 1; }
  std::size_t input_dim() const { return widths.front(); }
  std::size_t output_dim() const { return widths.back(); }
  std::size_t parameter_count() const;
  /// Throws StructuralError for fewer than two widths or a zero width.
  void validate() const;
};

/// Samples stored row-major: inputs is size x input_dim, targets is
/// size x output_dim. Cross-entropy targets are per-sample distributions.
struct Batch {
  std::size_t size = 0;
  std::size_t input_dim = 0;
  std::size_t output_dim = 0;
  std::vector<double> inputs;
  std::vector<double> targets;

  /// Rows selected by index, in the order given.
  Batch subset(std::span<const std::size_t> indices) const;
};

/// Activations recorded by mlp_forward, stored column-major per layer
/// (features x batch). Opaque to callers; consumed by mlp_backward.
struct MlpCache {
  std::size_t batch_size = 0;
  std::vector<std::vector<double>> activations;  // layer 0 is the input
  std::vector<double> output_grad;               // d loss / d output
};

struct ForwardResult {
  double loss = 0.0;
  MlpCache cache;
};

/// Glorot-uniform weights, zero biases.
ParamVector mlp_init(const MlpSpec& spec, RngStream& rng);

/// Mean loss over the batch. MSE is (1 / 2n) sum ||y - target||^2.
/// Throws StructuralError when the weights or batch do not match the spec
/// or the batch is empty.
ForwardResult mlp_forward(const MlpSpec& spec, const ParamVector& weights, const Batch& batch);

/// Exact gradient of the forward loss with respect to the flat weights.
ParamVector mlp_backward(const MlpSpec& spec, const ParamVector& weights, const MlpCache& cache);

/// Output of the network for every sample, row-major (size x output_dim).
std::vector<double> mlp_predict(const MlpSpec& spec, const ParamVector& weights,
                                const Batch& batch);

/// Regression set: inputs i.i.d. N(0, 1), targets produced by a frozen
/// tanh teacher network {input_dim, teacher_width, teacher_width, output_dim}
/// whose weights are drawn from the same seed.
Batch synthetic_teacher_regression(std::size_t input_dim, std::size_t output_dim,
                                   std::size_t samples, std::uint64_t seed,
                                   std::size_t teacher_width = 30);

}  // namespace adabench
