// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance            all criteria
//   acceptance 3 6        selected criteria
//
// Exit status is nonzero when any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"

#include "adabench/basin.hpp"
#include "adabench/escape.hpp"
#include "adabench/finite_diff.hpp"
#include "adabench/mlp.hpp"
#include "adabench/monitor.hpp"
#include "adabench/online.hpp"
#include "adabench/optimizer.hpp"
#include "adabench/problems.hpp"
#include "adabench/rate.hpp"
#include "adabench/regret.hpp"
#include "adabench/stable.hpp"
#include "adabench/trajectory.hpp"
#include "bench/commands.hpp"
#include "bench/config.hpp"

using namespace adabench;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [failed]");
    pass = pass && ok;
  }
};

std::string fmt(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

OptimizerConfig with(const char* name, double alpha, double eps = 1e-8) {
  OptimizerConfig c = named_optimizer(name);
  c.hp.alpha = alpha;
  c.hp.epsilon = eps;
  return c;
}

// 1. Hand-computed first steps on f = theta^2 from theta_0 = 1, alpha = 0.1, eps = 0.
Outcome first_step() {
  Outcome o;
  for (auto [name, expected] : {std::pair{"adamomentum", 0.0}, std::pair{"adam", 0.9}}) {
    const OptimizerConfig c = with(name, 0.1, 0.0);
    OptimizerState s(c.kernel, 1);
    ParamVector theta{1.0};
    step(s, theta, ParamVector{2.0 * theta[0]}, c.hp);
    o.require(std::abs(theta[0] - expected) <= 1e-12,
              std::string(name) + fmt(" theta_1=%.17g (want %g)", theta[0], expected));
  }
  return o;
}

// 2. Zero-gradient asymptote of the effective stepsize.
Outcome eps_asymptote() {
  Outcome o;
  const OptimizerConfig am = named_optimizer("adamomentum");
  const OptimizerConfig ad = named_optimizer("adam");
  OptimizerState sa(am.kernel, 1), sd(ad.kernel, 1);
  ParamVector a{0.0}, d{0.0};
  for (int t = 0; t < 10000; ++t) {
    step(sa, a, ParamVector{0.0}, am.hp);
    step(sd, d, ParamVector{0.0}, ad.hp);
  }
  const double want_am = std::sqrt(1.0 - am.hp.beta2) * am.hp.alpha / std::sqrt(am.hp.epsilon);
  const double want_ad = ad.hp.alpha / ad.hp.epsilon;
  const double got_am = effective_stepsize(sa, am.hp)[0];
  const double got_ad = effective_stepsize(sd, ad.hp)[0];
  o.require(std::abs(got_am - want_am) <= 0.05 * want_am,
            fmt("AdaMomentum %.6g vs %.6g", got_am, want_am));
  o.require(std::abs(got_ad - want_ad) <= 0.05 * want_ad, fmt("Adam %.6g vs %.6g", got_ad, want_ad));
  return o;
}

// 3. Sphere race from (1.0, 1.5).
Outcome sphere_race() {
  Outcome o;
  const std::vector<RaceEntry> entries{{"adamomentum_0.1", with("adamomentum", 0.1)},
                                       {"adam_0.1", with("adam", 0.1)},
                                       {"adam_0.5", with("adam", 0.5)},
                                       {"adam_1.0", with("adam", 1.0)}};
  const auto r = race(sphere(2), entries, ParamVector{1.0, 1.5}, 2000, 1e-6);
  const auto steps = [](const RaceResult& x) {
    return x.steps_to_threshold ? static_cast<double>(*x.steps_to_threshold) : INFINITY;
  };
  o.require(steps(r[0]) < steps(r[1]),
            fmt("steps to ||theta||<=1e-3: AdaMomentum %g vs Adam %g", steps(r[0]), steps(r[1])));
  for (std::size_t i = 2; i < 4; ++i) {
    o.require(r[i].max_distance > r[i].start_distance,
              r[i].label + fmt(" max ||theta_t|| %.4g vs ||theta_0|| %.4g", r[i].max_distance,
                               r[i].start_distance));
  }
  return o;
}

// 4. Regret rate with alpha_t = alpha / sqrt(t), beta1_t = beta1 lambda^t.
Outcome regret_rate() {
  Outcome o;
  RngStream rng = derive_stream(0, 0);
  const auto stream = online_quadratic_stream(10, 100000, rng, 1.0, 0.5);
  OptimizerConfig c = with("adamomentum", 0.1);
  c.hp.alpha_schedule = ScheduleSpec::inverse_sqrt();
  c.hp.beta1_schedule = ScheduleSpec::exp_decay(0.99);
  const auto rep = regret_harness(stream, c, ParamVector(10));
  o.require(rep.slope <= -0.4, fmt("slope of log(R/T) %.4f (want <= -0.4)", rep.slope));
  return o;
}

// 5. Nonconvex rate with 1 - beta1_t = 1 / sqrt(t), alpha_t = alpha / sqrt(t).
Outcome nonconvex_rate() {
  Outcome o;
  OptimizerConfig c = with("adamomentum", 0.1);
  c.hp.beta1 = 0.0;
  c.hp.alpha_schedule = ScheduleSpec::inverse_sqrt();
  c.hp.beta1_schedule = ScheduleSpec::complement_inverse_sqrt();
  const auto q = nonconvex_rate_harness(ill_conditioned_quadratic(10, 10.0), c, ParamVector(10, 1.0),
                                        100000);
  o.require(q.slope <= -0.4, fmt("quadratic running-average slope %.4f (want <= -0.4)", q.slope));
  const auto r = nonconvex_rate_harness(rosenbrock(2), c, ParamVector{-1.2, 1.0}, 100000);
  const double ratio = r.running_average[1000] / r.running_average[100000];
  o.require(ratio >= 10.0, fmt("Rosenbrock decrease from T=1e3 to 1e5: %.4gx (want >= 10x)", ratio));
  return o;
}

// 6. Escape times under SaS noise (tail index 1.5), paired trials.
Outcome escape_direction() {
  Outcome o;
  const BasinLandscape land = basin_landscape(BasinKind::double_well_flat_sharp);
  const std::vector<OptimizerConfig> opts{with("adamomentum", 0.03), with("adam", 0.03)};
  EscapeSetup setup;
  setup.noise = StableNoiseSpec::isotropic(1.5, 1.0);
  setup.trials = 100;
  setup.budget = 10000;
  setup.master_seed = 7;
  setup.basin = "flat";
  const auto flat = escape_harness(land, opts, setup);
  setup.basin = "sharp";
  const auto sharp = escape_harness(land, opts, setup);

  const auto& fa = flat.per_optimizer[0];
  const auto& fd = flat.per_optimizer[1];
  const auto test = paired_sign_test(fa, fd);
  o.require(fa.mean_gamma >= fd.mean_gamma,
            fmt("flat mean Gamma AdaMomentum %.1f vs Adam %.1f", fa.mean_gamma, fd.mean_gamma));
  o.require(test.p_value < 0.05, fmt("sign test wins %g, p=%.3g", static_cast<double>(test.wins),
                                     test.p_value));
  for (std::size_t k = 0; k < 2; ++k) {
    const double s = sharp.per_optimizer[k].mean_gamma;
    const double f = flat.per_optimizer[k].mean_gamma;
    o.require(s < f, opts[k].name + fmt(" sharp %.1f < flat %.1f", s, f));
  }
  return o;
}

// 7. Noise-vs-momentum monitor on a 5-layer width-30 network.
Outcome assumption_fraction() {
  Outcome o;
  MonitorSetup setup;
  setup.spec.widths = {10, 30, 30, 30, 30, 1};
  setup.dataset = synthetic_teacher_regression(10, 1, 256, 3);
  setup.batch_size = 128;
  setup.steps = 10000;
  setup.optimizer = named_optimizer("adamomentum");
  setup.seed = 0;
  setup.threshold = 0.9;
  const auto rep = assumption_monitor(setup);
  double tail = 0.0;
  for (std::size_t i = rep.fraction.size() - 1000; i < rep.fraction.size(); ++i) tail += rep.fraction[i];
  tail /= 1000.0;
  o.require(rep.t0 && *rep.t0 < 10000,
            (rep.t0 ? fmt("T0=%g", static_cast<double>(*rep.t0)) : std::string("no T0")) +
                fmt(", mean fraction over the last 1000 steps %.3f", tail));
  return o;
}

double max_rel_err(const ParamVector& a, const ParamVector& b) {
  const double scale = std::max(max_abs(a), max_abs(b));
  return max_abs(a - b) / std::max(scale, 1e-12);
}

std::vector<double> random_vec(RngStream& rng, std::size_t n) {
  std::vector<double> g(n);
  for (double& x : g) x = rng.normal() * std::exp(rng.uniform(-3.0, 3.0));
  return g;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 8. Property suites.
Outcome properties() {
  Outcome o;

  {  // kernel identity against direct loops
    RngStream rng(81, 0);
    bool same = true;
    for (const char* name : {"adam", "adamomentum"}) {
      const OptimizerConfig c = with(name, 3e-3);
      OptimizerState s(c.kernel, 8);
      ParamVector theta(8, 0.5);
      oracle::AdamState ref_state;
      std::vector<double> ref(8, 0.5);
      for (int t = 0; t < 1000; ++t) {
        const auto g = random_vec(rng, 8);
        step(s, theta, ParamVector(g), c.hp);
        if (std::string(name) == "adam") {
          oracle::adam_step(ref_state, ref, g, c.hp.alpha, c.hp.beta1, c.hp.beta2, c.hp.epsilon);
        } else {
          oracle::adamomentum_step(ref_state, ref, g, c.hp.alpha, c.hp.beta1, c.hp.beta2,
                                   c.hp.epsilon);
        }
      }
      same = same && theta.values() == ref;
    }
    o.require(same, "bit-exact kernel identity over 1000 steps");
  }

  {  // scale invariance at eps = 0
    RngStream rng(82, 0);
    double drift = 0.0;
    for (const char* name : {"adam", "adamomentum"}) {
      const OptimizerConfig c = with(name, 1e-2, 0.0);
      OptimizerState s1(c.kernel, 5), s2(c.kernel, 5);
      ParamVector a(5, 1.0), b(5, 1.0);
      for (int t = 0; t < 1000; ++t) {
        const ParamVector g(random_vec(rng, 5));
        step(s1, a, g, c.hp);
        step(s2, b, 1e3 * g, c.hp);
        for (std::size_t i = 0; i < 5; ++i) {
          drift = std::max(drift, std::abs(a[i] - b[i]) / std::max(std::abs(a[i]), 1e-300));
        }
      }
    }
    o.require(drift <= 1e-12, fmt("scale-invariance drift %.3g", drift));
  }

  {  // v >= eps (1 - beta2^t) / (1 - beta2)
    RngStream rng(83, 0);
    const OptimizerConfig c = with("adamomentum", 1e-3, 1e-6);
    OptimizerState s(c.kernel, 6);
    ParamVector theta(6);
    double worst = INFINITY;
    for (int t = 0; t < 2000; ++t) {
      step(s, theta, ParamVector(random_vec(rng, 6)), c.hp);
      const double bound = c.hp.epsilon * (1.0 - std::pow(c.hp.beta2, static_cast<double>(s.t))) /
                           (1.0 - c.hp.beta2);
      for (double v : s.v) worst = std::min(worst, v / bound);
    }
    // One rounding of the accumulated sum separates v from the closed form.
    o.require(worst >= 1.0 - 1e-12, fmt("min v / bound %.15g", worst));
  }

  {  // backprop against central differences
    RngStream rng(84, 0);
    double worst = 0.0;
    for (int draw = 0; draw < 20; ++draw) {
      MlpSpec spec;
      spec.widths = {1 + rng.below(5)};
      const std::size_t depth = 1 + rng.below(4);
      for (std::size_t i = 0; i < depth; ++i) spec.widths.push_back(1 + rng.below(6));
      spec.activation = rng.below(2) == 0 ? Activation::tanh : Activation::relu;
      const Batch b = synthetic_teacher_regression(spec.input_dim(), spec.output_dim(),
                                                   1 + rng.below(6), 100 + draw, 4);
      RngStream wr = derive_stream(85, static_cast<std::uint64_t>(draw));
      ParamVector w = mlp_init(spec, wr);
      for (double& v : w) v += 0.1 * wr.normal();
      const ParamVector g = mlp_backward(spec, w, mlp_forward(spec, w, b).cache);
      const ParamVector fd =
          finite_diff_grad([&](const ParamVector& x) { return mlp_forward(spec, x, b).loss; }, w);
      worst = std::max(worst, max_rel_err(g, fd));
    }
    o.require(worst <= 1e-6, fmt("backprop max relative error %.3g over 20 draws", worst));
  }

  {  // SaS sampler: KS at tail index 2, characteristic function at 1.5
    RngStream rng(86, 0);
    std::vector<double> x = sas_sample(StableNoiseSpec::isotropic(2.0, 1.0), rng, 100000).values();
    std::sort(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double cdf = 0.5 * std::erfc(-x[i] / 2.0);
      d = std::max({d, cdf - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - cdf});
    }
    o.require(d < 1.628 / std::sqrt(n), fmt("KS D=%.4g (critical %.4g at 1%%)", d, 1.628 / std::sqrt(n)));

    RngStream rng2(87, 0);
    const ParamVector y = sas_sample(StableNoiseSpec::isotropic(1.5, 1.0), rng2, 1000000);
    double worst = 0.0;
    for (double lambda : {0.5, 1.0, 2.0}) {
      double ecf = 0.0;
      for (double v : y) ecf += std::cos(lambda * v);
      ecf /= static_cast<double>(y.size());
      worst = std::max(worst, std::abs(ecf - std::exp(-std::pow(lambda, 1.5))));
    }
    o.require(worst < 0.01, fmt("characteristic function max error %.3g", worst));
  }

  {  // byte-identical reruns through the CSV writer
    const auto cfg = bench::parse_config(
        "problem:\n  name: rosenbrock\n  params:\n    noise_tail_index: 1.5\n"
        "    noise_scale: 0.01\nrun:\n  steps: 2000\n  seed: 5\n");
    const auto root = std::filesystem::temp_directory_path() / "adabench_acceptance";
    std::filesystem::remove_all(root);
    const auto a = bench::execute(bench::Command::run, cfg, root / "a");
    const auto b = bench::execute(bench::Command::run, cfg, root / "b");
    bool same = a.outputs.size() == b.outputs.size();
    for (std::size_t i = 0; same && i < a.outputs.size(); ++i) {
      same = slurp(a.outputs[i]) == slurp(b.outputs[i]);
    }
    o.require(same, "byte-identical reruns");
  }
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> check;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "first-step exactness", 1.0, first_step},
      {2, "epsilon-placement asymptote", 5.0, eps_asymptote},
      {3, "Sphere race", 5.0, sphere_race},
      {4, "online regret rate", 60.0, regret_rate},
      {5, "nonconvex gradient rate", 120.0, nonconvex_rate},
      {6, "flat-basin escape ordering", 600.0, escape_direction},
      {7, "noise-vs-momentum condition", 300.0, assumption_fraction},
      {8, "property suites", 300.0, properties},
  };
  std::vector<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));

  int failures = 0;
  for (const auto& c : all) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.id) == wanted.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("threw: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.limit_seconds;
    const bool pass = o.pass && in_time;
    std::printf("criterion %d %s: %s (%s; %.2fs of %.0fs%s)\n", c.id, c.name, pass ? "PASS" : "FAIL",
                o.detail.c_str(), secs, c.limit_seconds, in_time ? "" : ", too slow");
    std::fflush(stdout);
    if (!pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
