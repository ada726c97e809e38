#include "bench/commands.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <set>

#include <nlohmann/json.hpp>

#include "adabench/basin.hpp"
#include "adabench/errors.hpp"
#include "adabench/escape.hpp"
#include "adabench/fit.hpp"
#include "adabench/mlp.hpp"
#include "adabench/monitor.hpp"
#include "adabench/online.hpp"
#include "adabench/regret.hpp"
#include "adabench/slice.hpp"
#include "adabench/version.hpp"
#include "bench/io.hpp"

namespace bench {

namespace fs = std::filesystem;
using adabench::ConfigError;
using adabench::ParamVector;
using json = nlohmann::ordered_json;

std::string_view to_string(Command cmd) {
  switch (cmd) {
    case Command::run: return "run";
    case Command::race: return "race";
    case Command::regret: return "regret";
    case Command::escape: return "escape";
    case Command::assumption: return "assumption";
    case Command::slice: return "slice";
  }
  return "run";
}

Command parse_command(std::string_view name) {
  for (Command c : {Command::run, Command::race, Command::regret, Command::escape,
                    Command::assumption, Command::slice}) {
    if (to_string(c) == name) return c;
  }
  throw ConfigError("unknown command '" + std::string(name) + "'");
}

namespace {

// Typed access to problem.params that remembers which keys were read, so
// anything left over can be rejected as unknown.
class Params {
 public:
  explicit Params(const ExperimentConfig& c) : c_(c) {}

  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    const std::string path = "problem.params." + key;
    throw ConfigError(c_.origin.where(path) + ": " + path + ": " + what);
  }

  bool has(const std::string& key) const { return c_.problem.params.count(key) > 0; }

  double number(const std::string& key, double def) {
    const ParamValue* v = find(key);
    if (!v) return def;
    if (const auto* d = std::get_if<double>(v)) return *d;
    fail(key, "expected a number");
  }

  std::uint64_t count(const std::string& key, std::uint64_t def) {
    const double d = number(key, static_cast<double>(def));
    if (d < 0.0 || std::floor(d) != d) fail(key, "expected a non-negative integer");
    return static_cast<std::uint64_t>(d);
  }

  std::string text(const std::string& key, const std::string& def) {
    const ParamValue* v = find(key);
    if (!v) return def;
    if (const auto* s = std::get_if<std::string>(v)) return *s;
    fail(key, "expected a string");
  }

  std::optional<std::vector<double>> numbers(const std::string& key) {
    const ParamValue* v = find(key);
    if (!v) return std::nullopt;
    if (const auto* d = std::get_if<double>(v)) return std::vector<double>{*d};
    if (const auto* xs = std::get_if<std::vector<double>>(v)) return *xs;
    fail(key, "expected a number or a list of numbers");
  }

  std::optional<std::vector<std::string>> texts(const std::string& key) {
    const ParamValue* v = find(key);
    if (!v) return std::nullopt;
    if (const auto* s = std::get_if<std::string>(v)) return std::vector<std::string>{*s};
    if (const auto* xs = std::get_if<std::vector<std::string>>(v)) return *xs;
    fail(key, "expected a string or a list of strings");
  }

  void finish(Command cmd) const {
    for (const auto& [key, value] : c_.problem.params) {
      if (!used_.count(key)) {
        fail(key, "unknown key for '" + std::string(to_string(cmd)) + "' on problem '" +
                      c_.problem.name + "'");
      }
    }
  }

 private:
  const ParamValue* find(const std::string& key) {
    used_.insert(key);
    const auto it = c_.problem.params.find(key);
    return it == c_.problem.params.end() ? nullptr : &it->second;
  }

  const ExperimentConfig& c_;
  std::set<std::string> used_;
};

[[noreturn]] void fail_key(const ExperimentConfig& c, const std::string& key, const std::string& what) {
  throw ConfigError(c.origin.where(key) + ": " + key + ": " + what);
}

std::optional<adabench::BasinKind> landscape_kind(const std::string& name) {
  if (name == "double_well") return adabench::BasinKind::double_well_flat_sharp;
  if (name == "asymmetric_valley") return adabench::BasinKind::asymmetric_valley;
  if (name == "plateau_slope_basin") return adabench::BasinKind::plateau_slope_basin;
  return std::nullopt;
}

adabench::BasinLandscape read_landscape(const ExperimentConfig& c, Params& p,
                                        adabench::BasinKind kind) {
  if (c.problem.dim != 1) fail_key(c, "problem.dim", "landscapes are one-dimensional; set dim: 1");
  adabench::BasinParams bp;
  bp.depth = p.number("depth", bp.depth);
  bp.escape_fraction = p.number("escape_fraction", bp.escape_fraction);
  switch (kind) {
    case adabench::BasinKind::double_well_flat_sharp:
      bp.flat_half_width = p.number("flat_half_width", bp.flat_half_width);
      bp.sharp_half_width = p.number("sharp_half_width", bp.sharp_half_width);
      break;
    case adabench::BasinKind::asymmetric_valley:
      bp.valley_half_width = p.number("valley_half_width", bp.valley_half_width);
      bp.asymmetry = p.number("asymmetry", bp.asymmetry);
      break;
    case adabench::BasinKind::plateau_slope_basin:
      bp.plateau_gradient = p.number("plateau_gradient", bp.plateau_gradient);
      bp.slope_gradient = p.number("slope_gradient", bp.slope_gradient);
      break;
  }
  try {
    return adabench::basin_landscape(kind, bp);
  } catch (const ConfigError& e) {
    fail_key(c, "problem.params", e.what());
  }
}

struct MlpTask {
  adabench::MlpSpec spec;
  adabench::Batch data;
};

MlpTask read_mlp(const ExperimentConfig& c, Params& p) {
  MlpTask task;
  const auto widths = p.numbers("widths").value_or(std::vector<double>{10, 30, 30, 30, 30, 1});
  for (double w : widths) {
    if (w < 1.0 || std::floor(w) != w) p.fail("widths", "widths must be positive integers");
    task.spec.widths.push_back(static_cast<std::size_t>(w));
  }
  if (task.spec.widths.size() < 2) p.fail("widths", "need at least input and output widths");
  const std::string act = p.text("activation", "tanh");
  if (act == "tanh") task.spec.activation = adabench::Activation::tanh;
  else if (act == "relu") task.spec.activation = adabench::Activation::relu;
  else p.fail("activation", "expected tanh or relu");
  const auto samples = p.count("samples", 256);
  if (samples == 0) p.fail("samples", "must be >= 1");
  const auto data_seed = p.count("data_seed", 0);
  const auto teacher_width = p.count("teacher_width", 30);
  task.data = adabench::synthetic_teacher_regression(task.spec.input_dim(), task.spec.output_dim(),
                                                     samples, data_seed, teacher_width);
  (void)c;
  return task;
}

// Deterministic objective plus a default start point.
struct BuiltProblem {
  adabench::Problem problem;
  ParamVector start;
  std::optional<adabench::BasinLandscape> landscape;
};

BuiltProblem build_problem(const ExperimentConfig& c, Params& p) {
  const std::string& name = c.problem.name;
  const std::size_t dim = c.problem.dim;
  std::optional<adabench::Problem> problem;
  ParamVector start(dim, 1.0);
  std::optional<adabench::BasinLandscape> landscape;

  if (name == "sphere") {
    problem = adabench::sphere(dim);
  } else if (name == "rosenbrock") {
    if (dim < 2) fail_key(c, "problem.dim", "rosenbrock needs dim >= 2");
    problem = adabench::rosenbrock(dim);
    for (std::size_t i = 0; i < dim; i += 2) start[i] = -1.2;
  } else if (name == "quadratic") {
    const double kappa = p.number("condition_number", 10.0);
    if (kappa < 1.0) p.fail("condition_number", "must be >= 1");
    problem = adabench::ill_conditioned_quadratic(dim, kappa);
  } else if (const auto kind = landscape_kind(name)) {
    landscape = read_landscape(c, p, *kind);
    problem = landscape->problem();
    start = ParamVector{landscape->basins().front().center};
  } else if (name == "mlp_teacher") {
    auto task = std::make_shared<MlpTask>(read_mlp(c, p));
    problem = adabench::Problem(
        "mlp_teacher", task->spec.parameter_count(),
        [task](const ParamVector& w) { return adabench::mlp_forward(task->spec, w, task->data).loss; },
        [task](const ParamVector& w) {
          return adabench::mlp_backward(task->spec, w,
                                        adabench::mlp_forward(task->spec, w, task->data).cache);
        });
    adabench::RngStream init = adabench::derive_stream(c.run.seed, 0);
    start = adabench::mlp_init(task->spec, init);
  } else {
    fail_key(c, "problem.name",
             "unknown problem '" + name +
                 "' (sphere, rosenbrock, quadratic, double_well, asymmetric_valley, "
                 "plateau_slope_basin, mlp_teacher, online_quadratic)");
  }

  if (auto s = p.numbers("start")) {
    if (s->size() == 1) {
      start = ParamVector(problem->dim(), s->front());
    } else if (s->size() == problem->dim()) {
      start = ParamVector(*s);
    } else {
      p.fail("start", "expected 1 or " + std::to_string(problem->dim()) + " values");
    }
  }
  return BuiltProblem{std::move(*problem), std::move(start), std::move(landscape)};
}

std::optional<adabench::StableNoiseSpec> read_noise(Params& p, double tail_default,
                                                    double scale_default) {
  adabench::StableNoiseSpec noise;
  noise.tail_index = p.number("noise_tail_index", tail_default);
  noise.scale = {p.number("noise_scale", scale_default)};
  try {
    noise.validate();
  } catch (const adabench::Error& e) {
    p.fail(p.has("noise_tail_index") ? "noise_tail_index" : "noise_scale", e.what());
  }
  if (noise.is_zero()) return std::nullopt;
  return noise;
}

struct Contender {
  std::string label;
  adabench::OptimizerConfig config;
};

// "name:alpha" entries; the label is name_alpha with alpha as written.
std::vector<Contender> read_contenders(const ExperimentConfig& c, Params& p) {
  std::vector<Contender> out;
  const auto list = p.texts("contenders");
  if (!list) {
    out.push_back({c.optimizer.name, optimizer_config(c)});
    return out;
  }
  for (const std::string& item : *list) {
    const auto colon = item.find(':');
    ExperimentConfig variant = c;
    std::string label = item;
    variant.optimizer.name = item.substr(0, colon);
    if (colon != std::string::npos) {
      const std::string alpha = item.substr(colon + 1);
      char* end = nullptr;
      const double a = std::strtod(alpha.c_str(), &end);
      if (alpha.empty() || *end != '\0' || !(a > 0.0)) {
        p.fail("contenders", "bad entry '" + item + "', expected name:alpha");
      }
      variant.optimizer.alpha = a;
      label = variant.optimizer.name + "_" + alpha;
    }
    try {
      out.push_back({label, optimizer_config(variant)});
    } catch (const ConfigError& e) {
      p.fail("contenders", e.what());
    }
  }
  return out;
}

json params_json(const ParamVector& x) { return json(x.values()); }

json optimizer_json(const adabench::OptimizerConfig& oc) {
  return json{{"name", oc.name},
              {"alpha", oc.hp.alpha},
              {"beta1", oc.hp.beta1},
              {"beta2", oc.hp.beta2},
              {"epsilon", oc.hp.epsilon},
              {"weight_decay", oc.hp.weight_decay},
              {"decay_mode", std::string(adabench::to_string(oc.hp.decay_mode))},
              {"alpha_schedule", std::string(adabench::to_string(oc.hp.alpha_schedule.kind))},
              {"beta1_schedule", std::string(adabench::to_string(oc.hp.beta1_schedule.kind))}};
}

class Output {
 public:
  explicit Output(fs::path dir) : dir_(std::move(dir)) {}

  void file(const std::string& name, const std::string& content) {
    const fs::path path = dir_ / name;
    write_atomic(path, content);
    written_.push_back(path);
  }
  void json_file(const std::string& name, const json& j) { file(name, j.dump(2) + "\n"); }

  std::vector<fs::path> finish(Command cmd, const ExperimentConfig& c) {
    json names = json::array();
    for (const auto& p : written_) names.push_back(p.filename().string());
    json manifest{{"command", std::string(to_string(cmd))},
                  {"config_hash", config_hash(c)},
                  {"master_seed", c.run.seed},
                  {"library_version", std::string(adabench::version)},
                  {"outputs", names}};
    json_file("manifest.json", manifest);
    return written_;
  }

 private:
  fs::path dir_;
  std::vector<fs::path> written_;
};

bool keep_row(std::size_t t, std::size_t last, std::uint64_t every) {
  return t % every == 0 || t == last;
}

CommandResult cmd_run(const ExperimentConfig& c, Params& p, Output& out) {
  BuiltProblem bp = build_problem(c, p);
  adabench::RunOptions opt;
  opt.record_every = c.run.record_every;
  opt.noise = read_noise(p, 2.0, 0.0);
  opt.seed = c.run.seed;
  p.finish(Command::run);
  if (c.run.steps == 0) fail_key(c, "run.steps", "must be >= 1");
  const adabench::OptimizerConfig oc = optimizer_config(c);

  const adabench::Trajectory tr = adabench::run(bp.problem, oc, bp.start, c.run.steps, opt);
  out.file("trajectory.csv", trajectory_csv(tr));

  json summary{{"command", "run"},
               {"problem", c.problem.name},
               {"optimizer", optimizer_json(oc)},
               {"steps_requested", c.run.steps},
               {"steps_taken", tr.steps_taken}};
  if (!tr.records.empty()) {
    summary["final_loss"] = tr.records.back().loss;
    summary["final_grad_sq_norm"] = tr.records.back().grad_sq_norm;
  }
  if (bp.problem.dim() <= 64) summary["final_params"] = params_json(tr.final_params);
  // Running average of ||grad||^2 from t = 0, as in the rate harness.
  if (tr.ok() && c.run.record_every == 1) {
    std::vector<double> avg;
    double sum = adabench::norm_sq(bp.problem.gradient(bp.start));
    avg.push_back(sum);
    for (const auto& r : tr.records) {
      sum += r.grad_sq_norm;
      avg.push_back(sum / static_cast<double>(avg.size() + 1));
    }
    summary["grad_sq_running_average_final"] = avg.back();
    if (avg.size() >= 20) summary["grad_sq_running_average_slope"] = adabench::final_decade_slope(avg, 0);
  }
  CommandResult res;
  if (!tr.ok()) {
    summary["failure"] = json{{"step", tr.failure->step}, {"reason", tr.failure->reason}};
    res.exit_code = exit_run_failed;
    res.message = "run failed at step " + std::to_string(tr.failure->step) + ": " + tr.failure->reason;
  } else {
    summary["failure"] = nullptr;
  }
  out.json_file("summary.json", summary);
  res.outputs = out.finish(Command::run, c);
  return res;
}

CommandResult cmd_race(const ExperimentConfig& c, Params& p, Output& out) {
  BuiltProblem bp = build_problem(c, p);
  const double threshold = p.number("threshold", 1e-6);
  const auto contenders = read_contenders(c, p);
  p.finish(Command::race);
  if (!bp.problem.optimum()) fail_key(c, "problem.name", "race needs a problem with a known optimum");
  if (!(threshold > 0.0)) p.fail("threshold", "must be positive");
  if (c.run.steps == 0) fail_key(c, "run.steps", "must be >= 1");

  std::vector<adabench::RaceEntry> entries;
  for (const auto& ct : contenders) entries.push_back({ct.label, ct.config});
  const auto results = adabench::race(bp.problem, entries, bp.start, c.run.steps, threshold);

  CsvTable csv({"label", "optimizer", "alpha", "steps_to_threshold", "final_gap", "max_distance",
                "start_distance", "overshoot", "diverged"});
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    csv.add_row({r.label, contenders[i].config.name, format_double(r.alpha),
                 r.steps_to_threshold ? std::to_string(*r.steps_to_threshold) : "",
                 format_double(r.final_gap), format_double(r.max_distance),
                 format_double(r.start_distance), r.max_distance > r.start_distance ? "1" : "0",
                 r.diverged ? "1" : "0"});
  }
  out.file("race.csv", csv.str());
  CommandResult res;
  res.outputs = out.finish(Command::race, c);
  return res;
}

CommandResult cmd_regret(const ExperimentConfig& c, Params& p, Output& out) {
  if (c.problem.name != "online_quadratic") {
    fail_key(c, "problem.name", "regret runs on problem 'online_quadratic'");
  }
  const double box = p.number("box_radius", 1.0);
  const double offset = p.number("offset", 0.0);
  ParamVector start(c.problem.dim, 0.0);
  if (auto s = p.numbers("start")) {
    if (s->size() == 1) start = ParamVector(c.problem.dim, s->front());
    else if (s->size() == c.problem.dim) start = ParamVector(*s);
    else p.fail("start", "expected 1 or " + std::to_string(c.problem.dim) + " values");
  }
  p.finish(Command::regret);
  if (!(box > 0.0)) p.fail("box_radius", "must be positive");
  if (c.run.steps == 0) fail_key(c, "run.steps", "must be >= 1");

  adabench::RngStream rng = adabench::derive_stream(c.run.seed, 0);
  const auto stream = adabench::online_quadratic_stream(c.problem.dim, c.run.steps, rng, box, offset);
  const adabench::OptimizerConfig oc = optimizer_config(c);
  adabench::RegretReport rep;
  try {
    rep = adabench::regret_harness(stream, oc, start);
  } catch (const ConfigError& e) {
    fail_key(c, "schedule.alpha_kind", e.what());
  }

  CsvTable csv({"t", "learner_loss", "regret", "regret_over_t"});
  const std::size_t T = rep.regret.size();
  for (std::size_t i = 0; i < T; ++i) {
    if (!keep_row(i + 1, T, c.run.record_every)) continue;
    csv.add_row({std::to_string(i + 1), format_double(rep.learner_loss[i]),
                 format_double(rep.regret[i]), format_double(rep.regret_over_t[i])});
  }
  out.file("regret.csv", csv.str());
  out.json_file("summary.json", json{{"command", "regret"},
                                     {"optimizer", optimizer_json(oc)},
                                     {"horizon", T},
                                     {"final_regret", rep.regret.back()},
                                     {"final_regret_over_t", rep.regret_over_t.back()},
                                     {"slope", rep.slope}});
  CommandResult res;
  res.outputs = out.finish(Command::regret, c);
  return res;
}

CommandResult cmd_escape(const ExperimentConfig& c, Params& p, Output& out) {
  const auto kind = landscape_kind(c.problem.name);
  if (!kind) fail_key(c, "problem.name", "escape runs on a basin landscape");
  const adabench::BasinLandscape land = read_landscape(c, p, *kind);
  std::vector<std::string> basins;
  for (const auto& b : land.basins()) basins.push_back(b.name);
  if (auto chosen = p.texts("basins")) {
    for (const auto& b : *chosen) {
      if (std::find(basins.begin(), basins.end(), b) == basins.end()) {
        p.fail("basins", "landscape has no basin '" + b + "'");
      }
    }
    basins = *chosen;
  }
  const auto noise = read_noise(p, 1.5, 1.0);
  const auto threads = p.count("threads", 0);
  const auto contenders = read_contenders(c, p);
  p.finish(Command::escape);
  if (c.run.trials < 30) fail_key(c, "run.trials", "escape needs at least 30 trials");
  if (c.run.steps == 0) fail_key(c, "run.steps", "the escape budget must be >= 1");

  std::vector<adabench::OptimizerConfig> configs;
  for (const auto& ct : contenders) configs.push_back(ct.config);

  CsvTable csv({"basin", "optimizer", "trial", "gamma", "censored"});
  json per_basin = json::object();
  for (const auto& basin : basins) {
    adabench::EscapeSetup setup;
    setup.basin = basin;
    setup.noise = noise.value_or(adabench::StableNoiseSpec::isotropic(1.5, 0.0));
    setup.trials = c.run.trials;
    setup.budget = c.run.steps;
    setup.master_seed = c.run.seed;
    setup.threads = static_cast<unsigned>(threads);
    const auto rep = adabench::escape_harness(land, configs, setup);

    json stats = json::object();
    for (std::size_t k = 0; k < rep.per_optimizer.size(); ++k) {
      const auto& s = rep.per_optimizer[k];
      for (const auto& t : s.trials) {
        csv.add_row({basin, contenders[k].label, std::to_string(t.trial), std::to_string(t.gamma),
                     t.censored ? "1" : "0"});
      }
      stats[contenders[k].label] = json{{"mean_gamma", s.mean_gamma},
                                        {"median_gamma", s.median_gamma},
                                        {"censored", s.censored}};
    }
    json tests = json::array();
    for (std::size_t k = 1; k < rep.per_optimizer.size(); ++k) {
      const auto st = adabench::paired_sign_test(rep.per_optimizer[0], rep.per_optimizer[k]);
      tests.push_back(json{{"longer", contenders[0].label},
                           {"than", contenders[k].label},
                           {"wins", st.wins},
                           {"losses", st.losses},
                           {"ties", st.ties},
                           {"p_value", st.p_value}});
    }
    per_basin[basin] = json{{"optimizers", stats}, {"sign_tests", tests}};
  }
  out.file("escape.csv", csv.str());
  out.json_file("summary.json", json{{"command", "escape"},
                                     {"landscape", c.problem.name},
                                     {"tail_index", noise ? noise->tail_index : 1.5},
                                     {"noise_scale", noise ? noise->scale[0] : 0.0},
                                     {"trials", c.run.trials},
                                     {"budget", c.run.steps},
                                     {"basins", per_basin}});
  CommandResult res;
  res.outputs = out.finish(Command::escape, c);
  return res;
}

CommandResult cmd_assumption(const ExperimentConfig& c, Params& p, Output& out) {
  if (c.problem.name != "mlp_teacher") {
    fail_key(c, "problem.name", "assumption runs on problem 'mlp_teacher'");
  }
  MlpTask task = read_mlp(c, p);
  adabench::MonitorSetup setup;
  setup.spec = task.spec;
  setup.dataset = std::move(task.data);
  setup.batch_size = p.count("batch_size", 32);
  setup.threshold = p.number("threshold", 0.9);
  p.finish(Command::assumption);
  if (setup.batch_size == 0) p.fail("batch_size", "must be >= 1");
  setup.steps = c.run.steps;
  setup.optimizer = optimizer_config(c);
  setup.seed = c.run.seed;
  const auto rep = adabench::assumption_monitor(setup);

  CsvTable csv({"t", "fraction", "noise_sq_mean", "bound_mean", "loss"});
  const std::size_t T = rep.fraction.size();
  for (std::size_t i = 0; i < T; ++i) {
    if (!keep_row(i + 1, T, c.run.record_every)) continue;
    csv.add_row({std::to_string(i + 1), format_double(rep.fraction[i]),
                 format_double(rep.noise_sq_mean[i]), format_double(rep.bound_mean[i]),
                 format_double(rep.loss[i])});
  }
  out.file("monitor.csv", csv.str());
  json summary{{"command", "assumption"},
               {"optimizer", optimizer_json(setup.optimizer)},
               {"steps", T},
               {"batch_size", setup.batch_size},
               {"dataset_size", setup.dataset.size},
               {"degenerate", rep.degenerate},
               {"threshold", setup.threshold}};
  summary["t0"] = rep.t0 ? json(*rep.t0) : json(nullptr);
  if (T > 0) summary["final_fraction"] = rep.fraction.back();
  out.json_file("summary.json", summary);
  CommandResult res;
  res.outputs = out.finish(Command::assumption, c);
  return res;
}

CommandResult cmd_slice(const ExperimentConfig& c, Params& p, Output& out) {
  BuiltProblem bp = build_problem(c, p);
  const auto grid = p.count("grid_points", 21);
  const double radius = p.number("radius", 1.0);
  const double flat_radius = p.number("flatness_radius", radius);
  p.finish(Command::slice);
  if (grid < 2) p.fail("grid_points", "must be >= 2");
  if (!(radius > 0.0)) p.fail("radius", "must be positive");
  if (!(flat_radius > 0.0)) p.fail("flatness_radius", "must be positive");
  if (bp.problem.dim() < 2) fail_key(c, "problem.dim", "a 2-D slice needs dim >= 2");

  const adabench::OptimizerConfig oc = optimizer_config(c);
  ParamVector center = bp.start;
  if (c.run.steps > 0) {
    adabench::RunOptions opt;
    opt.record_every = c.run.steps;
    const auto tr = adabench::run(bp.problem, oc, bp.start, c.run.steps, opt);
    if (!tr.ok()) {
      CommandResult res;
      res.exit_code = exit_run_failed;
      res.message = "training failed at step " + std::to_string(tr.failure->step) + ": " +
                    tr.failure->reason;
      out.json_file("summary.json", json{{"command", "slice"},
                                         {"failure", json{{"step", tr.failure->step},
                                                          {"reason", tr.failure->reason}}}});
      res.outputs = out.finish(Command::slice, c);
      return res;
    }
    center = tr.final_params;
  }
  const auto f = [&](const ParamVector& x) { return bp.problem.value(x); };
  adabench::RngStream rng = adabench::derive_stream(c.run.seed, 2);
  const auto dirs = adabench::random_directions(center.size(), rng);
  const auto slice = adabench::loss_slice(f, center, dirs, grid, radius);

  CsvTable csv({"i", "j", "a", "b", "loss"});
  for (std::size_t i = 0; i < slice.points(); ++i) {
    for (std::size_t j = 0; j < slice.points(); ++j) {
      csv.add_row({std::to_string(i), std::to_string(j), format_double(slice.offsets[i]),
                   format_double(slice.offsets[j]), format_double(slice.at(i, j))});
    }
  }
  out.file("slice.csv", csv.str());
  out.json_file("summary.json",
                json{{"command", "slice"},
                     {"optimizer", optimizer_json(oc)},
                     {"trained_steps", c.run.steps},
                     {"center_value", slice.center_value},
                     {"flatness_radius", flat_radius},
                     {"flatness", adabench::flatness_score(f, center, dirs, flat_radius)},
                     {"failure", nullptr}});
  CommandResult res;
  res.outputs = out.finish(Command::slice, c);
  return res;
}

}  // namespace

std::string trajectory_csv(const adabench::Trajectory& traj) {
  std::string out(trajectory_header);
  out += '\n';
  for (const auto& r : traj.records) {
    out += std::to_string(r.t);
    for (double v : {r.loss, r.grad_sq_norm, r.eff_step_min, r.eff_step_mean, r.eff_step_max,
                     r.alpha_t, r.beta1_t}) {
      out += ',';
      out += format_double(v);
    }
    out += '\n';
  }
  if (traj.failure) out += std::to_string(traj.failure->step) + ",nan,,,,,,\n";
  return out;
}

CommandResult execute(Command cmd, const ExperimentConfig& config, const fs::path& out_dir) {
  Params params(config);
  Output out(out_dir);
  switch (cmd) {
    case Command::run: return cmd_run(config, params, out);
    case Command::race: return cmd_race(config, params, out);
    case Command::regret: return cmd_regret(config, params, out);
    case Command::escape: return cmd_escape(config, params, out);
    case Command::assumption: return cmd_assumption(config, params, out);
    case Command::slice: return cmd_slice(config, params, out);
  }
  throw ConfigError("unhandled command");
}

}  // namespace bench
