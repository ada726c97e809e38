#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace adabench {

/// Flat vector of double-precision parameter coordinates.
///
/// Holds theta, gradients and the moment estimates. Length is fixed once
/// constructed; all elementwise helpers below return vectors of the same
/// length and throw StructuralError when two operands disagree.
class ParamVector {
 public:
  ParamVector() = default;
  explicit ParamVector(std::size_t n, double fill = 0.0) : values_(n, fill) {}
  ParamVector(std::initializer_list<double> values) : values_(values) {}
  explicit ParamVector(std::vector<double> values) : values_(std::move(values)) {}

  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }

  double& operator[](std::size_t i) noexcept { return values_[i]; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

  double* data() noexcept { return values_.data(); }
  const double* data() const noexcept { return values_.data(); }

  auto begin() noexcept { return values_.begin(); }
  auto end() noexcept { return values_.end(); }
  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

  std::span<double> span() noexcept { return values_; }
  std::span<const double> span() const noexcept { return values_; }
  const std::vector<double>& values() const noexcept { return values_; }

  bool operator==(const ParamVector&) const = default;

 private:
  std::vector<double> values_;
};

/// Throws StructuralError unless both vectors have the same length.
void require_same_length(const ParamVector& a, const ParamVector& b, const char* context);

ParamVector square(const ParamVector& x);
ParamVector sqrt(const ParamVector& x);
ParamVector abs(const ParamVector& x);
ParamVector divide(const ParamVector& num, const ParamVector& den);

ParamVector operator+(const ParamVector& a, const ParamVector& b);
ParamVector operator-(const ParamVector& a, const ParamVector& b);
ParamVector operator*(double s, const ParamVector& x);

/// y += a * x
void axpy(double a, const ParamVector& x, ParamVector& y);

double dot(const ParamVector& a, const ParamVector& b);
double norm_sq(const ParamVector& x);
double norm(const ParamVector& x);
double max_abs(const ParamVector& x);
bool all_finite(const ParamVector& x);

/// Index of the first non-finite coordinate, or size() when all are finite.
std::size_t first_non_finite(const ParamVector& x);

}  // namespace adabench
