#include "adabench/escape.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <boost/math/distributions/binomial.hpp>
#include <thread>

#include "adabench/errors.hpp"
#include "adabench/rng.hpp"

namespace adabench {

EscapeTrialReport escape_trial(const BasinLandscape& landscape, const Basin& basin,
                               const OptimizerConfig& optimizer, const StableNoiseSpec& noise,
                               std::uint64_t budget, std::uint64_t master_seed,
                               std::uint64_t trial) {
  RngStream rng = derive_stream(master_seed, trial);
  OptimizerState state(optimizer.kernel, 1);
  ParamVector theta{basin.center};
  ParamVector grad(1);
  const bool noiseless = noise.is_zero();
  for (std::uint64_t t = 1; t <= budget; ++t) {
    grad[0] = landscape.derivative(theta[0]);
    if (!noiseless) grad[0] += noise.scale_at(0) * sas_draw(noise.tail_index, rng);
    step(state, theta, grad, optimizer.hp);
    if (!std::isfinite(theta[0]) || landscape.escaped(basin, theta[0])) {
      return {trial, t, false};
    }
  }
  return {trial, budget, true};
}

namespace {

void summarize(EscapeStats& stats) {
  std::vector<double> gammas;
  gammas.reserve(stats.trials.size());
  double sum = 0.0;
  for (const auto& tr : stats.trials) {
    gammas.push_back(static_cast<double>(tr.gamma));
    sum += static_cast<double>(tr.gamma);
    if (tr.censored) ++stats.censored;
  }
  stats.mean_gamma = sum / static_cast<double>(gammas.size());
  std::sort(gammas.begin(), gammas.end());
  const std::size_t n = gammas.size();
  stats.median_gamma = n % 2 == 1 ? gammas[n / 2] : 0.5 * (gammas[n / 2 - 1] + gammas[n / 2]);
}

}  // namespace

EscapeReport escape_harness(const BasinLandscape& landscape,
                            std::span<const OptimizerConfig> optimizers,
                            const EscapeSetup& setup) {
  if (setup.trials < 30) throw ConfigError("escape harness: need at least 30 trials");
  if (setup.budget < 1) throw ConfigError("escape harness: budget must be >= 1");
  setup.noise.validate();
  const Basin& basin = landscape.basin(setup.basin);
  for (const auto& opt : optimizers) opt.hp.validate();

  EscapeReport report;
  report.landscape = std::string(to_string(landscape.kind()));
  report.basin = setup.basin;
  report.noise = setup.noise;
  report.budget = setup.budget;
  report.master_seed = setup.master_seed;

  const std::size_t jobs = optimizers.size() * setup.trials;
  std::vector<EscapeTrialReport> results(jobs);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t job = next++; job < jobs; job = next++) {
      const std::size_t o = job / setup.trials;
      const std::size_t trial = job % setup.trials;
      results[job] = escape_trial(landscape, basin, optimizers[o], setup.noise, setup.budget,
                                  setup.master_seed, trial);
    }
  };
  unsigned threads = setup.threads != 0 ? setup.threads : std::thread::hardware_concurrency();
  threads = std::clamp<unsigned>(threads, 1, 64);
  {
    std::vector<std::jthread> pool;
    for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
    worker();
  }

  for (std::size_t o = 0; o < optimizers.size(); ++o) {
    EscapeStats stats;
    stats.optimizer = optimizers[o].name;
    stats.trials.assign(results.begin() + static_cast<std::ptrdiff_t>(o * setup.trials),
                        results.begin() + static_cast<std::ptrdiff_t>((o + 1) * setup.trials));
    summarize(stats);
    report.per_optimizer.push_back(std::move(stats));
  }
  return report;
}

SignTestResult paired_sign_test(const EscapeStats& a, const EscapeStats& b) {
  if (a.trials.size() != b.trials.size()) {
    throw StructuralError("sign test: trial counts differ");
  }
  SignTestResult res;
  for (std::size_t i = 0; i < a.trials.size(); ++i) {
    if (a.trials[i].trial != b.trials[i].trial) {
      throw StructuralError("sign test: trials are not paired by index");
    }
    if (a.trials[i].gamma > b.trials[i].gamma) {
      ++res.wins;
    } else if (a.trials[i].gamma < b.trials[i].gamma) {
      ++res.losses;
    } else {
      ++res.ties;
    }
  }
  const std::size_t n = res.wins + res.losses;
  if (n == 0) return res;
  if (res.wins == 0) {
    res.p_value = 1.0;
    return res;
  }
  const boost::math::binomial_distribution<double> dist(static_cast<double>(n), 0.5);
  res.p_value = boost::math::cdf(boost::math::complement(dist, static_cast<double>(res.wins - 1)));
  return res;
}

}  // namespace adabench
