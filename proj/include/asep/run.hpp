#pragma once

#include "asep/fluctuation.hpp"

#include "json.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace asep {

enum ExitCode : int { kExitOk = 0, kExitConfig = 2, kExitKernel = 3, kExitAssertion = 4, kExitSolver = 5 };

struct RunConfig {
  std::filesystem::path kernel_path;
  std::optional<nlohmann::json> kernel_inline;  // {"dimension", "jumps"} given inside a run config
  double rho = 0.5;
  std::vector<BasisLevel> schedule{{1, 2}, {2, 3}, {3, 3}};
  double tol_svd = 1e-10;
  double tol_id = 1e-12;
  bool rational = false;
  std::filesystem::path out;  // empty: stdout

  // Throws ConfigParse / InvalidDensity.
  void validate() const;
};

// Reads either a run config ({"kernel": path-or-object, "rho", "schedule",
// "tol_svd", "tol_id", "rational", "out"}) or a bare kernel file (has
// "jumps"). Relative kernel paths resolve against the config's directory.
RunConfig load_run_config(const std::filesystem::path& path);

int exit_code_for(ErrorCode code);

struct RunResult {
  int exit_code = kExitOk;
  nlohmann::json report;
};

// subcommand: "validate", "check" or "compute". Progress goes to `log`.
RunResult run(const std::string& subcommand, const RunConfig& cfg, std::ostream& log);

}  // namespace asep
