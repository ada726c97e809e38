#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"

#include "adabench/basin.hpp"
#include "adabench/errors.hpp"
#include "adabench/escape.hpp"
#include "adabench/fit.hpp"
#include "adabench/mlp.hpp"
#include "adabench/monitor.hpp"
#include "adabench/online.hpp"
#include "adabench/rate.hpp"
#include "adabench/regret.hpp"
#include "adabench/slice.hpp"
#include "adabench/trajectory.hpp"

using namespace adabench;

namespace {

OptimizerConfig with_alpha(const char* name, double alpha) {
  OptimizerConfig c = named_optimizer(name);
  c.hp.alpha = alpha;
  return c;
}

OptimizerConfig regret_config(double alpha) {
  OptimizerConfig c = with_alpha("adamomentum", alpha);
  c.hp.alpha_schedule = ScheduleSpec::inverse_sqrt();
  c.hp.beta1_schedule = ScheduleSpec::exp_decay(0.99);
  return c;
}

OptimizerConfig rate_config(double alpha) {
  OptimizerConfig c = with_alpha("adamomentum", alpha);
  c.hp.beta1 = 0.0;
  c.hp.alpha_schedule = ScheduleSpec::inverse_sqrt();
  c.hp.beta1_schedule = ScheduleSpec::complement_inverse_sqrt();
  return c;
}

const ParamVector fig4_start{1.0, 1.5};

}  // namespace

TEST_CASE("run records every step at theta_t") {
  const Trajectory tr = run(sphere(2), with_alpha("adamomentum", 0.1), fig4_start, 500);
  REQUIRE(tr.ok());
  CHECK(tr.records.size() == 500);
  CHECK(tr.steps_taken == 500);
  for (std::size_t i = 0; i < tr.records.size(); ++i) REQUIRE(tr.records[i].t == i + 1);
  CHECK(norm(tr.final_params) <= 1e-3);
  CHECK(tr.records.back().loss == sphere(2).value(tr.final_params));
  CHECK(tr.records.back().alpha_t == 0.1);
}

TEST_CASE("record_every thins the records but keeps the last step") {
  RunOptions opt;
  opt.record_every = 7;
  const Trajectory tr = run(sphere(2), named_optimizer("adam"), fig4_start, 50, opt);
  CHECK(tr.records.size() == 8);
  CHECK(tr.records.back().t == 50);
}

TEST_CASE("zero-gradient problem keeps theta fixed") {
  RunOptions opt;
  opt.record_params = true;
  const ParamVector start{0.3, -0.7};
  const Trajectory tr = run(constant_problem(2, 1.0), named_optimizer("adamomentum"), start, 100, opt);
  for (const auto& p : tr.params) REQUIRE(p == start);
}

TEST_CASE("a non-finite loss stops the run with a failure record") {
  const Problem blowup("blowup", 1,
                       [](const ParamVector& x) { return x[0] < -0.5 ? std::log(-1.0) : x[0]; },
                       [](const ParamVector&) { return ParamVector{1.0}; });
  const Trajectory tr = run(blowup, with_alpha("sgd", 0.1), ParamVector{0.0}, 100);
  REQUIRE_FALSE(tr.ok());
  CHECK(tr.failure->step == 6);
  CHECK(tr.records.size() == 5);
}

TEST_CASE("Sphere race: AdaMomentum reaches the threshold first") {
  const std::vector<RaceEntry> entries{{"adamomentum_0.1", with_alpha("adamomentum", 0.1)},
                                       {"adam_0.1", with_alpha("adam", 0.1)}};
  const auto res = race(sphere(2), entries, fig4_start, 500, 1e-6);
  REQUIRE(res[0].steps_to_threshold);
  REQUIRE(res[1].steps_to_threshold);
  CHECK(*res[0].steps_to_threshold < *res[1].steps_to_threshold);
}

TEST_CASE("race boundary cases") {
  const std::vector<RaceEntry> entries{{"adam", named_optimizer("adam")}};
  const auto res = race(sphere(2), entries, fig4_start, 10, 100.0);
  CHECK(*res[0].steps_to_threshold == 1);
  const Problem no_opt("plain", 1, [](const ParamVector& x) { return x[0]; },
                       [](const ParamVector&) { return ParamVector{1.0}; });
  CHECK_THROWS_AS(race(no_opt, entries, ParamVector{0.0}, 10, 1e-3), ConfigError);
  CHECK_THROWS_AS(race(sphere(2), entries, fig4_start, 10, 0.0), ConfigError);
}

TEST_CASE("regret of the constant stream played from its center is zero") {
  const ParamVector c{0.4, -0.1, 0.2};
  const OnlineConvexStream s(std::vector<ParamVector>(1000, c));
  const RegretReport r = regret_harness(s, regret_config(0.1), c);
  for (double v : r.regret) REQUIRE(v == 0.0);
}

TEST_CASE("regret bookkeeping matches recomputation") {
  RngStream rng(41, 0);
  const OnlineConvexStream s = online_quadratic_stream(5, 5000, rng, 1.0, 0.5);
  const RegretReport r = regret_harness(s, regret_config(0.1), ParamVector(5));
  const auto again = recompute_regret(s, r.learner_loss);
  REQUIRE(again.size() == r.regret.size());
  for (std::size_t i = 0; i < again.size(); ++i) REQUIRE(std::abs(again[i] - r.regret[i]) <= 1e-9);
  for (std::size_t i = 0; i < again.size(); ++i) {
    REQUIRE(r.regret_over_t[i] == r.regret[i] / static_cast<double>(i + 1));
  }
}

TEST_CASE("regret harness insists on its schedules") {
  RngStream rng(42, 0);
  const OnlineConvexStream s = online_quadratic_stream(2, 10, rng);
  CHECK_THROWS_AS(regret_harness(s, named_optimizer("adamomentum"), ParamVector(2)), ConfigError);
  OptimizerConfig c = regret_config(0.1);
  c.hp.beta1_schedule = ScheduleSpec::constant();
  CHECK_THROWS_AS(regret_harness(s, c, ParamVector(2)), ConfigError);
}

TEST_CASE("rate harness from a stationary point stays at zero") {
  const RateReport r = nonconvex_rate_harness(sphere(3), rate_config(0.1), ParamVector(3), 2000);
  for (double a : r.running_average) REQUIRE(a == 0.0);
  CHECK(r.running_average.size() == 2001);
  CHECK_THROWS_AS(nonconvex_rate_harness(sphere(3), named_optimizer("adam"), ParamVector(3), 10),
                  ConfigError);
}

TEST_CASE("running average is the mean of the squared gradient norms") {
  const RateReport r =
      nonconvex_rate_harness(rosenbrock(2), rate_config(0.1), ParamVector{-1.2, 1.0}, 300);
  double sum = 0.0;
  for (std::size_t t = 0; t < r.grad_sq.size(); ++t) {
    sum += r.grad_sq[t];
    REQUIRE(r.running_average[t] == doctest::Approx(sum / static_cast<double>(t + 1)).epsilon(1e-12));
  }
}

TEST_CASE("line fits") {
  const std::vector<double> x{0.0, 1.0, 2.0, 3.0};
  const std::vector<double> y{1.0, 3.0, 5.0, 7.0};
  const LineFit f = ols(x, y);
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.intercept == doctest::Approx(1.0));

  std::vector<double> series;
  for (int t = 1; t <= 10000; ++t) series.push_back(3.0 / std::sqrt(double(t)));
  CHECK(final_decade_slope(series) == doctest::Approx(-0.5).epsilon(1e-9));
  series.back() = 0.0;
  CHECK(std::isnan(final_decade_slope(series)));
}

TEST_CASE("zero noise never escapes") {
  const BasinLandscape w = basin_landscape(BasinKind::double_well_flat_sharp);
  const std::vector<OptimizerConfig> opts{with_alpha("adamomentum", 0.03), with_alpha("adam", 0.03)};
  EscapeSetup setup;
  setup.basin = "flat";
  setup.noise = StableNoiseSpec::isotropic(1.5, 0.0);
  setup.trials = 30;
  setup.budget = 500;
  const EscapeReport r = escape_harness(w, opts, setup);
  for (const auto& s : r.per_optimizer) {
    CHECK(s.censored == 30);
    CHECK(s.mean_gamma == 500.0);
  }
}

TEST_CASE("common random numbers pair the trials") {
  const BasinLandscape w = basin_landscape(BasinKind::double_well_flat_sharp);
  const std::vector<OptimizerConfig> opts{with_alpha("adam", 0.03), with_alpha("adam", 0.03)};
  EscapeSetup setup;
  setup.basin = "sharp";
  setup.noise = StableNoiseSpec::isotropic(1.5, 1.0);
  setup.trials = 40;
  setup.budget = 3000;
  setup.master_seed = 5;
  setup.threads = 3;
  const EscapeReport r = escape_harness(w, opts, setup);
  for (std::size_t i = 0; i < 40; ++i) {
    REQUIRE(r.per_optimizer[0].trials[i].gamma == r.per_optimizer[1].trials[i].gamma);
  }
  setup.threads = 1;
  const EscapeReport serial = escape_harness(w, opts, setup);
  for (std::size_t i = 0; i < 40; ++i) {
    REQUIRE(serial.per_optimizer[0].trials[i].gamma == r.per_optimizer[0].trials[i].gamma);
  }
  const auto single = escape_trial(w, w.basin("sharp"), opts[0], setup.noise, 3000, 5, 17);
  CHECK(single.gamma == r.per_optimizer[0].trials[17].gamma);
  for (const auto& t : r.per_optimizer[0].trials) REQUIRE((t.gamma >= 1 || t.censored));
}

TEST_CASE("escape setup validation") {
  const BasinLandscape w = basin_landscape(BasinKind::double_well_flat_sharp);
  const std::vector<OptimizerConfig> opts{named_optimizer("adam")};
  EscapeSetup setup;
  setup.basin = "flat";
  setup.trials = 29;
  CHECK_THROWS_AS(escape_harness(w, opts, setup), ConfigError);
  setup.trials = 30;
  setup.budget = 0;
  CHECK_THROWS_AS(escape_harness(w, opts, setup), ConfigError);
}

TEST_CASE("sharp basins are left sooner than flat ones") {
  const BasinLandscape w = basin_landscape(BasinKind::double_well_flat_sharp);
  const std::vector<OptimizerConfig> opts{with_alpha("adamomentum", 0.03), with_alpha("adam", 0.03)};
  EscapeSetup setup;
  setup.noise = StableNoiseSpec::isotropic(1.5, 1.0);
  setup.trials = 100;
  setup.budget = 10000;
  setup.master_seed = 7;
  setup.basin = "flat";
  const EscapeReport flat = escape_harness(w, opts, setup);
  setup.basin = "sharp";
  const EscapeReport sharp = escape_harness(w, opts, setup);
  for (std::size_t k = 0; k < opts.size(); ++k) {
    CAPTURE(opts[k].name);
    CHECK(sharp.per_optimizer[k].mean_gamma < flat.per_optimizer[k].mean_gamma);
  }
}

TEST_CASE("sign test p-value") {
  EscapeStats a, b;
  for (std::uint64_t i = 0; i < 12; ++i) {
    a.trials.push_back({i, i < 8 ? 10u : 1u, false});
    b.trials.push_back({i, i < 10 ? 5u : 1u, false});
  }
  // 8 wins, 2 losses, 2 ties: P(Bin(10, 1/2) >= 8) = 56 / 1024.
  const SignTestResult r = paired_sign_test(a, b);
  CHECK(r.wins == 8);
  CHECK(r.losses == 2);
  CHECK(r.ties == 2);
  CHECK(r.p_value == doctest::Approx(56.0 / 1024.0).epsilon(1e-12));
  b.trials.pop_back();
  CHECK_THROWS_AS(paired_sign_test(a, b), StructuralError);
}

TEST_CASE("burn-in step") {
  const std::vector<double> f{0.5, 0.95, 0.8, 0.91, 0.99, 1.0};
  CHECK(*burn_in_step(f, 0.9) == 3);
  CHECK_FALSE(burn_in_step(std::vector<double>{0.95, 0.5}, 0.9));
  CHECK(*burn_in_step(std::vector<double>{0.95, 0.96}, 0.9) == 0);
}

TEST_CASE("full-batch monitor is degenerate with fraction 1") {
  MonitorSetup s;
  s.spec.widths = {4, 6, 1};
  s.dataset = synthetic_teacher_regression(4, 1, 32, 1);
  s.batch_size = 32;
  s.steps = 200;
  s.optimizer = named_optimizer("adamomentum");
  const auto r = assumption_monitor(s);
  CHECK(r.degenerate);
  for (double f : r.fraction) REQUIRE(f == 1.0);
  CHECK(*r.t0 == 0);
}

TEST_CASE("beta1 = 0 makes the bound zero") {
  MonitorSetup s;
  s.spec.widths = {4, 6, 1};
  s.dataset = synthetic_teacher_regression(4, 1, 64, 2);
  s.batch_size = 8;
  s.steps = 200;
  s.optimizer = named_optimizer("adamomentum");
  s.optimizer.hp.beta1 = 0.0;
  const auto r = assumption_monitor(s);
  CHECK_FALSE(r.degenerate);
  for (double b : r.bound_mean) REQUIRE(b == 0.0);
  // Only coordinates with no mini-batch noise at all can pass.
  for (std::size_t t = 0; t < r.fraction.size(); ++t) {
    if (r.noise_sq_mean[t] > 0.0) REQUIRE(r.fraction[t] < 1.0);
  }
}

TEST_CASE("monitor fractions stay in [0, 1] and runs repeat exactly") {
  MonitorSetup s;
  s.spec.widths = {5, 8, 8, 1};
  s.dataset = synthetic_teacher_regression(5, 1, 100, 3);
  s.batch_size = 20;
  s.steps = 300;
  s.optimizer = named_optimizer("adamomentum");
  s.seed = 9;
  const auto a = assumption_monitor(s);
  const auto b = assumption_monitor(s);
  CHECK(a.fraction == b.fraction);
  CHECK(a.loss == b.loss);
  for (double f : a.fraction) REQUIRE((f >= 0.0 && f <= 1.0));
}

TEST_CASE("sphere slice is rotationally symmetric") {
  RngStream rng(43, 0);
  const Problem p = sphere(6);
  const auto f = [&](const ParamVector& x) { return p.value(x); };
  const SliceDirections d = random_directions(6, rng);
  const LossSlice s = loss_slice(f, ParamVector(6), d, 11, 2.0);
  CHECK(s.center_value == 0.0);
  CHECK(s.at(5, 5) == 0.0);
  for (std::size_t i = 0; i < s.points(); ++i) {
    for (std::size_t j = 0; j < s.points(); ++j) {
      const double a = s.offsets[i], b = s.offsets[j];
      REQUIRE(std::abs(s.at(i, j) - (a * a + b * b)) <= 1e-12);
    }
  }
  CHECK(flatness_score(f, ParamVector(6), d, 0.5) == doctest::Approx(0.25).epsilon(1e-12));

  SliceDirections skew = d;
  skew.d2 = skew.d1;
  CHECK_THROWS_AS(loss_slice(f, ParamVector(6), skew, 5, 1.0), ConfigError);
}

TEST_CASE("slice center equals f(theta) off the origin") {
  RngStream rng(44, 0);
  const Problem p = rosenbrock(4);
  const auto f = [&](const ParamVector& x) { return p.value(x); };
  const ParamVector c{0.1, -0.3, 0.7, 1.2};
  const LossSlice s = loss_slice(f, c, random_directions(4, rng), 7, 0.5);
  CHECK(s.center_value == p.value(c));
  CHECK(s.at(3, 3) == p.value(c));
}

TEST_CASE("effective stepsize on the plateau-slope-basin curve") {
  const BasinLandscape l = basin_landscape(BasinKind::plateau_slope_basin);
  const Problem p = l.problem();
  const double steep = 1.0;  // |f'| on the slope
  const std::uint64_t steps = 20000;
  const std::size_t window = 20;
  RunOptions opt;
  opt.record_params = true;

  auto windows = [&](const char* name) {
    const Trajectory tr = run(p, with_alpha(name, 1e-3), ParamVector{-0.5}, steps, opt);
    REQUIRE(tr.ok());
    // Entry: first iterate where the gradient has reached its slope value.
    std::size_t entry = tr.records.size();
    for (std::size_t i = 0; i < tr.records.size(); ++i) {
      if (std::abs(l.derivative(tr.params[i][0])) >= steep) {
        entry = i;
        break;
      }
    }
    REQUIRE(entry + window <= tr.records.size());
    double at_entry = 0.0;
    for (std::size_t i = entry; i < entry + window; ++i) at_entry += tr.records[i].eff_step_mean;
    double settled = 0.0;
    const std::size_t tail = steps / 10;
    for (std::size_t i = tr.records.size() - tail; i < tr.records.size(); ++i) {
      REQUIRE(l.region_of(tr.params[i][0]) == "basin");
      settled += tr.records[i].eff_step_mean;
    }
    return std::pair{at_entry / window, settled / static_cast<double>(tail)};
  };
  const auto [am_entry, am_basin] = windows("adamomentum");
  const auto [adam_entry, adam_basin] = windows("adam");
  CHECK(am_entry > adam_entry);
  CHECK(am_basin < adam_basin);
}

TEST_CASE("AdaMomentum-trained networks sit in flatter regions") {
  MlpSpec spec;
  spec.widths = {10, 30, 30, 1};
  const Batch data = synthetic_teacher_regression(10, 1, 256, 11);
  const auto f = [&](const ParamVector& w) { return mlp_forward(spec, w, data).loss; };
  const Problem p("mlp", spec.parameter_count(), f, [&](const ParamVector& w) {
    return mlp_backward(spec, w, mlp_forward(spec, w, data).cache);
  });
  RunOptions opt;
  opt.record_every = 3000;
  double am = 0.0, adam = 0.0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    RngStream init = derive_stream(seed, 0);
    const ParamVector w0 = mlp_init(spec, init);
    RngStream dr = derive_stream(seed, 2);
    const SliceDirections d = random_directions(w0.size(), dr);
    am += flatness_score(f, run(p, named_optimizer("adamomentum"), w0, 3000, opt).final_params, d, 1.0);
    adam += flatness_score(f, run(p, named_optimizer("adam"), w0, 3000, opt).final_params, d, 1.0);
  }
  CHECK(am / 5.0 <= adam / 5.0);
}

TEST_CASE("harnesses repeat exactly for a fixed seed") {
  RngStream r1(45, 0), r2(45, 0);
  const auto s1 = online_quadratic_stream(3, 500, r1);
  const auto s2 = online_quadratic_stream(3, 500, r2);
  CHECK(regret_harness(s1, regret_config(0.1), ParamVector(3)).regret ==
        regret_harness(s2, regret_config(0.1), ParamVector(3)).regret);

  RunOptions opt;
  opt.noise = StableNoiseSpec::isotropic(1.5, 0.1);
  opt.seed = 3;
  const auto a = run(sphere(2), named_optimizer("adamomentum"), fig4_start, 300, opt);
  const auto b = run(sphere(2), named_optimizer("adamomentum"), fig4_start, 300, opt);
  CHECK(a.final_params == b.final_params);
  opt.seed = 4;
  CHECK(run(sphere(2), named_optimizer("adamomentum"), fig4_start, 300, opt).final_params !=
        a.final_params);

  const auto ra = nonconvex_rate_harness(sphere(2), rate_config(0.1), fig4_start, 500,
                                         StableNoiseSpec::isotropic(2.0, 0.1), 8);
  const auto rb = nonconvex_rate_harness(sphere(2), rate_config(0.1), fig4_start, 500,
                                         StableNoiseSpec::isotropic(2.0, 0.1), 8);
  CHECK(ra.grad_sq == rb.grad_sq);
}
