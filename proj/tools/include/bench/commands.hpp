#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "adabench/trajectory.hpp"
#include "bench/config.hpp"

namespace bench {

enum class Command { run, race, regret, escape, assumption, slice };

std::string_view to_string(Command cmd);
/// Throws adabench::ConfigError for an unknown name.
Command parse_command(std::string_view name);

/// Process exit codes.
inline constexpr int exit_ok = 0;
inline constexpr int exit_config = 1;
inline constexpr int exit_run_failed = 2;
inline constexpr int exit_error = 3;

struct CommandResult {
  int exit_code = exit_ok;
  std::vector<std::filesystem::path> outputs;  // written files, manifest last
  std::string message;                         // failure diagnostic, if any
};

/// Runs one subcommand and writes its outputs plus manifest.json under
/// out_dir. Config problems surface as adabench::ConfigError; a run that
/// hits a non-finite value returns exit_run_failed after flushing its
/// partial output.
CommandResult execute(Command cmd, const ExperimentConfig& config,
                      const std::filesystem::path& out_dir);

inline constexpr std::string_view trajectory_header =
    "t,loss,grad_sq_norm,eff_step_min,eff_step_mean,eff_step_max,alpha_t,beta1_t";

/// Trajectory CSV. A failed run ends with a marker row: t is the failing
/// step, loss is "nan" and the remaining fields are empty.
std::string trajectory_csv(const adabench::Trajectory& traj);

}  // namespace bench
