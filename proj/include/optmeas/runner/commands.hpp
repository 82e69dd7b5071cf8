#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include <optmeas/runner/config.hpp>

namespace optmeas::runner {

// Process exit codes.
enum exit_code : int { exit_ok = 0, exit_soft_failure = 1, exit_usage = 2, exit_infeasible = 3 };

struct command_options {
  std::optional<std::filesystem::path> config;
  std::optional<std::filesystem::path> out;
  std::optional<int> workers;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> kind;
  std::optional<std::string> reference;
  std::optional<double> check_tolerance;
};

// Each command writes its artifacts and a manifest.json under
// config.outputs and returns an exit code. Errors propagate as exceptions.
int cmd_design(const experiment_config& config, std::ostream& out);
int cmd_points(const experiment_config& config, std::ostream& out);
int cmd_diameter(const experiment_config& config, std::ostream& out);
int cmd_converge(const experiment_config& config, std::ostream& out);
// Prints the invariant table; writes nothing.
int cmd_check(const experiment_config& config, std::ostream& out);

// Loads the config (default_config() for `check` without one), applies the
// overrides, dispatches and maps exceptions onto the exit-code contract.
int run_command(const std::string& name, const command_options& options, std::ostream& out, std::ostream& err);

std::string library_version();

}  // namespace optmeas::runner
