#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "adabench/optimizer.hpp"
#include "adabench/schedule.hpp"

namespace bench {

/// Problem- and command-specific value: a number, a string or a list of either.
using ParamValue =
    std::variant<double, std::string, std::vector<double>, std::vector<std::string>>;

struct ProblemSection {
  std::string name;
  std::size_t dim = 2;
  std::map<std::string, ParamValue> params;

  bool operator==(const ProblemSection&) const = default;
};

struct OptimizerSection {
  std::string name = "adamomentum";
  double alpha = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  double weight_decay = 0.0;
  // "auto" keeps the named optimizer's own mode (decoupled for adamw).
  std::string decay_mode = "auto";

  bool operator==(const OptimizerSection&) const = default;
};

struct ScheduleSection {
  adabench::ScheduleSpec alpha;
  adabench::ScheduleSpec beta1;

  bool operator==(const ScheduleSection&) const = default;
};

struct RunSection {
  std::uint64_t steps = 1000;
  std::uint64_t seed = 0;
  std::size_t trials = 100;
  std::uint64_t record_every = 1;
  std::string output_dir = "out";

  bool operator==(const RunSection&) const = default;
};

/// Line numbers of the keys as they appeared in the source file, used for
/// diagnostics only. Never part of equality or the hash.
struct SourceLines {
  std::string source;
  std::map<std::string, int> lines;

  bool operator==(const SourceLines&) const { return true; }
  /// "file:line" for a dotted key path, or just the file name.
  std::string where(const std::string& key) const;
};

struct ExperimentConfig {
  ProblemSection problem;
  OptimizerSection optimizer;
  ScheduleSection schedule;
  RunSection run;
  SourceLines origin;

  bool operator==(const ExperimentConfig&) const = default;
};

/// Parses YAML text. Unknown keys, wrong types and syntax errors raise
/// adabench::ConfigError with a "source:line: key" prefix. Missing optimizer,
/// schedule and run fields keep their defaults; problem.name is required.
ExperimentConfig parse_config(const std::string& text, const std::string& source = "<config>");
ExperimentConfig load_config(const std::filesystem::path& path);

/// Canonical YAML with every field written out; parse(serialize(c)) == c.
std::string serialize_config(const ExperimentConfig& config);

/// Hex SHA-256 of the canonical serialization.
std::string config_hash(const ExperimentConfig& config);

/// named_optimizer(name) with the section's hyperparameters and schedules.
adabench::OptimizerConfig optimizer_config(const ExperimentConfig& config);

}  // namespace bench
