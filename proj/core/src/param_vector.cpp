#include "adabench/param_vector.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "adabench/errors.hpp"

namespace adabench {

void require_same_length(const ParamVector& a, const ParamVector& b, const char* context) {
  if (a.size() != b.size()) {
    throw StructuralError(std::string(context) + ": length mismatch (" +
                          std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
  }
}

namespace {

template <typename Op>
ParamVector map(const ParamVector& x, Op op) {
  ParamVector out(x.size());
  std::transform(x.begin(), x.end(), out.begin(), op);
  return out;
}

template <typename Op>
ParamVector zip(const ParamVector& a, const ParamVector& b, const char* context, Op op) {
  require_same_length(a, b, context);
  ParamVector out(a.size());
  std::transform(a.begin(), a.end(), b.begin(), out.begin(), op);
  return out;
}

}  // namespace

ParamVector square(const ParamVector& x) {
  return map(x, [](double v) { return v * v; });
}

ParamVector sqrt(const ParamVector& x) {
  return map(x, [](double v) { return std::sqrt(v); });
}

ParamVector abs(const ParamVector& x) {
  return map(x, [](double v) { return std::abs(v); });
}

ParamVector divide(const ParamVector& num, const ParamVector& den) {
  return zip(num, den, "divide", [](double a, double b) { return a / b; });
}

ParamVector operator+(const ParamVector& a, const ParamVector& b) {
  return zip(a, b, "add", [](double x, double y) { return x + y; });
}

ParamVector operator-(const ParamVector& a, const ParamVector& b) {
  return zip(a, b, "subtract", [](double x, double y) { return x - y; });
}

ParamVector operator*(double s, const ParamVector& x) {
  return map(x, [s](double v) { return s * v; });
}

void axpy(double a, const ParamVector& x, ParamVector& y) {
  require_same_length(x, y, "axpy");
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

double dot(const ParamVector& a, const ParamVector& b) {
  require_same_length(a, b, "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm_sq(const ParamVector& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

double norm(const ParamVector& x) { return std::sqrt(norm_sq(x)); }

double max_abs(const ParamVector& x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

bool all_finite(const ParamVector& x) { return first_non_finite(x) == x.size(); }

std::size_t first_non_finite(const ParamVector& x) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i])) return i;
  }
  return x.size();
}

}  // namespace adabench
