#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <string>
#include <vector>

#include "doctest.h"

#include "adabench/errors.hpp"
#include "adabench/finite_diff.hpp"
#include "adabench/param_vector.hpp"
#include "adabench/problems.hpp"
#include "adabench/rng.hpp"
#include "adabench/stable.hpp"

using namespace adabench;

namespace {

std::vector<double> draws(double tail_index, std::size_t n, std::uint64_t seed) {
  RngStream rng(seed, 0);
  StableNoiseSpec spec = StableNoiseSpec::isotropic(tail_index, 1.0);
  ParamVector x = sas_sample(spec, rng, n);
  return x.values();
}

double quantile(std::vector<double> x, double q) {
  auto k = static_cast<std::size_t>(q * static_cast<double>(x.size() - 1));
  std::nth_element(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(k), x.end());
  return x[k];
}

}  // namespace

TEST_CASE("elementwise operations keep the length") {
  ParamVector x{4.0, 9.0, 0.25};
  CHECK(square(x).size() == 3);
  CHECK(sqrt(x) == ParamVector{2.0, 3.0, 0.5});
  CHECK(abs(ParamVector{-1.0, 2.0}) == ParamVector{1.0, 2.0});
  CHECK(divide(x, ParamVector{2.0, 3.0, 0.5}) == ParamVector{2.0, 3.0, 0.5});
  CHECK_THROWS_AS(x + ParamVector{1.0}, StructuralError);
  CHECK(first_non_finite(ParamVector{1.0, NAN, INFINITY}) == 1);
  CHECK(all_finite(x));
}

TEST_CASE("derive_stream is deterministic and stream ids differ") {
  RngStream a = derive_stream(42, 0);
  RngStream b = derive_stream(42, 0);
  RngStream c = derive_stream(42, 1);
  bool differs = false;
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t x = a.next_u64();
    REQUIRE(x == b.next_u64());
    differs = differs || x != c.next_u64();
  }
  CHECK(differs);
}

TEST_CASE("derive_stream(42, 7) first draw matches the golden file") {
  std::ifstream in(std::string(ADABENCH_GOLDEN_DIR) + "/rng_42_7.txt");
  REQUIRE(in.good());
  std::string key;
  unsigned long long u64 = 0;
  std::string uniform_text;
  in >> key >> u64 >> key >> uniform_text;
  CHECK(derive_stream(42, 7).next_u64() == u64);
  CHECK(derive_stream(42, 7).uniform() == std::stod(uniform_text));
}

TEST_CASE("uniform and below stay in range") {
  RngStream rng(3, 3);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    const double o = rng.uniform_open();
    REQUIRE(o > 0.0);
    REQUIRE(o < 1.0);
    REQUIRE(rng.below(7) < 7);
  }
}

TEST_CASE("tail index 2 has variance 2") {
  const auto x = draws(2.0, 1000000, 11);
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  double var = 0.0;
  for (double v : x) var += (v - mean) * (v - mean);
  var /= static_cast<double>(x.size() - 1);
  CHECK(var == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("tail index 2 passes a KS test against N(0, sqrt 2)") {
  auto x = draws(2.0, 100000, 12);
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    // Phi(x / sqrt 2) = erfc(-x / 2) / 2
    const double cdf = 0.5 * std::erfc(-x[i] / 2.0);
    d = std::max(d, std::max(cdf - static_cast<double>(i) / n,
                             static_cast<double>(i + 1) / n - cdf));
  }
  // Asymptotic Kolmogorov critical value at significance 0.01.
  CHECK(d < 1.628 / std::sqrt(n));
}

TEST_CASE("tail index 1 is standard Cauchy") {
  const auto x = draws(1.0, 1000000, 13);
  CHECK(std::abs(quantile(x, 0.5)) < 0.01);
  const double iqr = quantile(x, 0.75) - quantile(x, 0.25);
  CHECK(iqr == doctest::Approx(2.0).epsilon(0.03));
}

TEST_CASE("tail index 1.5 matches its characteristic function") {
  const auto x = draws(1.5, 1000000, 14);
  for (double lambda : {0.5, 1.0, 2.0}) {
    double ecf = 0.0;
    for (double v : x) ecf += std::cos(lambda * v);
    ecf /= static_cast<double>(x.size());
    CHECK(std::abs(ecf - std::exp(-std::pow(lambda, 1.5))) < 0.01);
  }
}

TEST_CASE("per-coordinate scale and domain checks") {
  RngStream rng(1, 1);
  StableNoiseSpec spec{1.5, {0.0, 1.0}};
  ParamVector x = sas_sample(spec, rng, 2);
  CHECK(x[0] == 0.0);
  CHECK(x[1] != 0.0);
  CHECK_THROWS_AS(sas_sample(StableNoiseSpec::isotropic(0.0, 1.0), rng, 3), ParameterDomainError);
  CHECK_THROWS_AS(sas_sample(StableNoiseSpec::isotropic(2.5, 1.0), rng, 3), ParameterDomainError);
  CHECK_THROWS_AS(sas_sample(StableNoiseSpec::isotropic(1.5, -1.0), rng, 3), ParameterDomainError);
}

TEST_CASE("finite differences") {
  const Problem s = sphere(2);
  ParamVector g = finite_diff_grad([&](const ParamVector& x) { return s.value(x); },
                                   ParamVector{1.0, 1.0});
  CHECK(std::abs(g[0] - 2.0) < 1e-8);
  CHECK(std::abs(g[1] - 2.0) < 1e-8);

  const Problem c = constant_problem(3, 4.0);
  CHECK(max_abs(finite_diff_grad([&](const ParamVector& x) { return c.value(x); },
                                 ParamVector{0.3, -2.0, 7.0})) < 1e-10);

  const Problem r = rosenbrock(2);
  CHECK(max_abs(finite_diff_grad([&](const ParamVector& x) { return r.value(x); },
                                 ParamVector{1.0, 1.0})) < 1e-6);
}

TEST_CASE("finite differences are exact on quadratics") {
  RngStream rng(5, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 4;
    std::vector<double> a(n * n), b(n);
    for (double& v : a) v = rng.uniform(-3.0, 3.0);
    for (double& v : b) v = rng.uniform(-3.0, 3.0);
    const double c = rng.uniform(-3.0, 3.0);
    auto f = [&](const ParamVector& x) {
      double s = c;
      for (std::size_t i = 0; i < n; ++i) {
        s += b[i] * x[i];
        for (std::size_t j = 0; j < n; ++j) s += a[i * n + j] * x[i] * x[j];
      }
      return s;
    };
    ParamVector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = rng.uniform(-2.0, 2.0);
    const ParamVector g = finite_diff_grad(f, x);
    for (std::size_t i = 0; i < n; ++i) {
      double exact = b[i];
      for (std::size_t j = 0; j < n; ++j) exact += (a[i * n + j] + a[j * n + i]) * x[j];
      CHECK(std::abs(g[i] - exact) <= 1e-8 * std::max(1.0, std::abs(exact)));
    }
  }
}

TEST_CASE("finite differences name the failing coordinate") {
  auto f = [](const ParamVector& x) { return x[1] > 0.5 ? std::log(-1.0) : 0.0; };
  try {
    finite_diff_grad(f, ParamVector{0.0, 0.5, 0.0});
    FAIL("expected an evaluation error");
  } catch (const EvaluationError& e) {
    REQUIRE(e.coordinate().has_value());
    CHECK(*e.coordinate() == 1);
  }
}
