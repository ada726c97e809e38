#include "adabench/mlp.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "adabench/errors.hpp"

namespace adabench {

namespace {

using RowMajorMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstWeightMap = Eigen::Map<const RowMajorMatrix>;
using WeightMap = Eigen::Map<RowMajorMatrix>;
using ColMap = Eigen::Map<Eigen::MatrixXd>;
using ConstColMap = Eigen::Map<const Eigen::MatrixXd>;
using ConstVecMap = Eigen::Map<const Eigen::VectorXd>;
using VecMap = Eigen::Map<Eigen::VectorXd>;

void check_inputs(const MlpSpec& spec, const ParamVector& weights) {
  spec.validate();
  if (weights.size() != spec.parameter_count()) {
    throw StructuralError("mlp: expected " + std::to_string(spec.parameter_count()) +
                          " weights, got " + std::to_string(weights.size()));
  }
}

void check_batch(const MlpSpec& spec, const Batch& batch) {
  if (batch.size == 0) throw StructuralError("mlp: empty batch");
  if (batch.input_dim != spec.input_dim() || batch.output_dim != spec.output_dim() ||
      batch.inputs.size() != batch.size * batch.input_dim ||
      batch.targets.size() != batch.size * batch.output_dim) {
    throw StructuralError("mlp: batch shape does not match the network");
  }
}

// Runs the layers and returns activations (features x n, column-major).
std::vector<std::vector<double>> propagate(const MlpSpec& spec, const ParamVector& weights,
                                           const Batch& batch) {
  const std::size_t n = batch.size;
  std::vector<std::vector<double>> acts;
  acts.reserve(spec.layers() + 1);
  // Row-major n x in is the same memory as column-major in x n.
  acts.push_back(batch.inputs);

  std::size_t offset = 0;
  for (std::size_t l = 0; l < spec.layers(); ++l) {
    const auto in = static_cast<Eigen::Index>(spec.widths[l]);
    const auto out = static_cast<Eigen::Index>(spec.widths[l + 1]);
    ConstWeightMap w(weights.data() + offset, out, in);
    ConstVecMap b(weights.data() + offset + out * in, out);
    offset += static_cast<std::size_t>(out * in + out);

    ConstColMap a_prev(acts.back().data(), in, static_cast<Eigen::Index>(n));
    std::vector<double> next(static_cast<std::size_t>(out) * n);
    ColMap z(next.data(), out, static_cast<Eigen::Index>(n));
    z.noalias() = w * a_prev;
    z.colwise() += b;
    if (l + 1 < spec.layers()) {
      if (spec.activation == Activation::tanh) {
        z = z.array().tanh();
      } else {
        z = z.array().max(0.0);
      }
    }
    acts.push_back(std::move(next));
  }
  return acts;
}

}  // namespace

std::size_t MlpSpec::parameter_count() const {
  std::size_t count = 0;
  for (std::size_t l = 0; l + 1 < widths.size(); ++l) count += widths[l + 1] * (widths[l] + 1);
  return count;
}

void MlpSpec::validate() const {
  if (widths.size() < 2) throw StructuralError("mlp: need at least input and output widths");
  for (auto w : widths) {
    if (w == 0) throw StructuralError("mlp: zero layer width");
  }
}

Batch Batch::subset(std::span<const std::size_t> indices) const {
  Batch out{indices.size(), input_dim, output_dim, {}, {}};
  out.inputs.reserve(indices.size() * input_dim);
  out.targets.reserve(indices.size() * output_dim);
  for (auto idx : indices) {
    if (idx >= size) throw StructuralError("batch subset: index out of range");
    out.inputs.insert(out.inputs.end(), inputs.begin() + idx * input_dim,
                      inputs.begin() + (idx + 1) * input_dim);
    out.targets.insert(out.targets.end(), targets.begin() + idx * output_dim,
                       targets.begin() + (idx + 1) * output_dim);
  }
  return out;
}

ParamVector mlp_init(const MlpSpec& spec, RngStream& rng) {
  spec.validate();
  ParamVector weights(spec.parameter_count());
  std::size_t offset = 0;
  for (std::size_t l = 0; l < spec.layers(); ++l) {
    const std::size_t in = spec.widths[l];
    const std::size_t out = spec.widths[l + 1];
    const double limit = std::sqrt(6.0 / static_cast<double>(in + out));
    for (std::size_t k = 0; k < in * out; ++k) weights[offset + k] = rng.uniform(-limit, limit);
    offset += in * out + out;
  }
  return weights;
}

ForwardResult mlp_forward(const MlpSpec& spec, const ParamVector& weights, const Batch& batch) {
  check_inputs(spec, weights);
  check_batch(spec, batch);
  const auto n = static_cast<Eigen::Index>(batch.size);
  const auto out = static_cast<Eigen::Index>(spec.output_dim());

  ForwardResult result;
  result.cache.batch_size = batch.size;
  result.cache.activations = propagate(spec, weights, batch);

  ConstColMap y(result.cache.activations.back().data(), out, n);
  ConstColMap target(batch.targets.data(), out, n);
  result.cache.output_grad.assign(static_cast<std::size_t>(out * n), 0.0);
  ColMap dy(result.cache.output_grad.data(), out, n);
  const double inv_n = 1.0 / static_cast<double>(n);

  if (spec.loss == LossKind::mse) {
    const Eigen::MatrixXd residual = y - target;
    result.loss = 0.5 * inv_n * residual.squaredNorm();
    dy = inv_n * residual;
  } else {
    double total = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      const Eigen::VectorXd logits = y.col(j);
      const double shift = logits.maxCoeff();
      const double log_z = shift + std::log((logits.array() - shift).exp().sum());
      const Eigen::VectorXd log_p = logits.array() - log_z;
      const double mass = target.col(j).sum();
      total -= target.col(j).dot(log_p);
      dy.col(j) = inv_n * (mass * log_p.array().exp().matrix() - target.col(j));
    }
    result.loss = inv_n * total;
  }
  return result;
}

ParamVector mlp_backward(const MlpSpec& spec, const ParamVector& weights, const MlpCache& cache) {
  check_inputs(spec, weights);
  if (cache.activations.size() != spec.layers() + 1) {
    throw StructuralError("mlp_backward: cache does not belong to this network");
  }
  const auto n = static_cast<Eigen::Index>(cache.batch_size);
  ParamVector grad(weights.size());

  std::vector<std::size_t> offsets(spec.layers());
  std::size_t offset = 0;
  for (std::size_t l = 0; l < spec.layers(); ++l) {
    offsets[l] = offset;
    offset += spec.widths[l + 1] * (spec.widths[l] + 1);
  }

  Eigen::MatrixXd delta =
      ConstColMap(cache.output_grad.data(), static_cast<Eigen::Index>(spec.output_dim()), n);
  for (std::size_t l = spec.layers(); l-- > 0;) {
    const auto in = static_cast<Eigen::Index>(spec.widths[l]);
    const auto out = static_cast<Eigen::Index>(spec.widths[l + 1]);
    ConstColMap a_prev(cache.activations[l].data(), in, n);
    WeightMap dw(grad.data() + offsets[l], out, in);
    VecMap db(grad.data() + offsets[l] + out * in, out);
    dw.noalias() = delta * a_prev.transpose();
    db = delta.rowwise().sum();
    if (l == 0) break;

    ConstWeightMap w(weights.data() + offsets[l], out, in);
    Eigen::MatrixXd back = w.transpose() * delta;
    if (spec.activation == Activation::tanh) {
      back.array() *= 1.0 - a_prev.array().square();
    } else {
      back.array() *= (a_prev.array() > 0.0).cast<double>();
    }
    delta = std::move(back);
  }
  return grad;
}

std::vector<double> mlp_predict(const MlpSpec& spec, const ParamVector& weights,
                                const Batch& batch) {
  check_inputs(spec, weights);
  if (batch.size == 0 || batch.input_dim != spec.input_dim() ||
      batch.inputs.size() != batch.size * batch.input_dim) {
    throw StructuralError("mlp_predict: batch shape does not match the network");
  }
  auto acts = propagate(spec, weights, batch);
  const auto out = static_cast<Eigen::Index>(spec.output_dim());
  const auto n = static_cast<Eigen::Index>(batch.size);
  std::vector<double> rows(acts.back().size());
  // column-major out x n -> row-major n x out: same memory layout.
  Eigen::Map<RowMajorMatrix>(rows.data(), n, out) = ConstColMap(acts.back().data(), out, n).transpose();
  return rows;
}

Batch synthetic_teacher_regression(std::size_t input_dim, std::size_t output_dim,
                                   std::size_t samples, std::uint64_t seed,
                                   std::size_t teacher_width) {
  if (samples == 0) throw ConfigError("synthetic_teacher_regression: samples must be >= 1");
  RngStream data_rng = derive_stream(seed, 0);
  RngStream teacher_rng = derive_stream(seed, 1);

  Batch batch{samples, input_dim, output_dim, std::vector<double>(samples * input_dim),
              std::vector<double>(samples * output_dim)};
  for (auto& x : batch.inputs) x = data_rng.normal();

  const MlpSpec teacher{{input_dim, teacher_width, teacher_width, output_dim},
                        Activation::tanh,
                        LossKind::mse};
  const ParamVector teacher_weights = mlp_init(teacher, teacher_rng);
  batch.targets = mlp_predict(teacher, teacher_weights, batch);
  return batch;
}

}  // namespace adabench
