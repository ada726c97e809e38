#include <CLI11.hpp>

#include <iostream>
#include <optional>

#include "adabench/errors.hpp"
#include "bench/commands.hpp"
#include "bench/config.hpp"

#ifndef ADABENCH_PRESET_DIR
#define ADABENCH_PRESET_DIR "presets"
#endif

int main(int argc, char** argv) {
  CLI::App app{"Benchmarks for adaptive optimizers"};
  app.require_subcommand(1);

  std::string config_path;
  std::string preset;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<bench::Command> chosen;

  for (auto cmd : {bench::Command::run, bench::Command::race, bench::Command::regret,
                   bench::Command::escape, bench::Command::assumption, bench::Command::slice}) {
    auto* sub = app.add_subcommand(std::string(bench::to_string(cmd)));
    auto* cfg = sub->add_option("--config", config_path, "YAML experiment file");
    auto* pre = sub->add_option("--preset", preset, "named preset from the preset directory");
    cfg->excludes(pre);
    sub->add_option("--seed", seed, "overrides run.seed");
    sub->add_option("--out", out, "overrides run.output_dir");
    sub->callback([cmd, &chosen] { chosen = cmd; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? bench::exit_ok : bench::exit_config;
  }

  try {
    if (config_path.empty() && preset.empty()) {
      throw adabench::ConfigError("one of --config or --preset is required");
    }
    const std::filesystem::path path =
        config_path.empty() ? std::filesystem::path(ADABENCH_PRESET_DIR) / (preset + ".yaml")
                            : std::filesystem::path(config_path);
    bench::ExperimentConfig config = bench::load_config(path);
    if (seed) config.run.seed = *seed;
    if (out) config.run.output_dir = *out;

    const auto result = bench::execute(*chosen, config, config.run.output_dir);
    for (const auto& p : result.outputs) std::cout << p.string() << '\n';
    if (!result.message.empty()) std::cerr << "bench: " << result.message << '\n';
    return result.exit_code;
  } catch (const adabench::ConfigError& e) {
    std::cerr << "bench: config error: " << e.what() << '\n';
    return bench::exit_config;
  } catch (const std::exception& e) {
    std::cerr << "bench: " << e.what() << '\n';
    return bench::exit_error;
  }
}
