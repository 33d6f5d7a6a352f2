#pragma once

#include <string>
#include <vector>

#include "tto/config.hpp"

namespace tto {

inline constexpr const char* kToolVersion = "0.1.0";

/// Process exit codes of a run.
enum class ExitStatus : int {
  kSuccess = 0,
  kAssertion = 1,  // an invariant check on the results failed
  kConfig = 2,     // invalid config, flag or subcommand
  kRuntime = 3,    // numerical failure or I/O error
};

struct RunReport {
  ExitStatus status = ExitStatus::kSuccess;
  std::string output_dir;
  std::vector<std::string> outputs;   // file names relative to output_dir, manifest excluded
  std::vector<std::string> failures;  // failed invariant checks
  std::vector<std::string> warnings;  // e.g. quadrature stopped at max_points
  std::string error;                  // set for kConfig / kRuntime
};

/// operator, clark, szego, stz, angular, lemmas.
const std::vector<std::string>& subcommands();

/// Builds the config, writes manifest.json (status "running"), runs the subcommand,
/// writes its outputs and the canonical config, then finalizes the manifest.
RunReport run_subcommand(const std::string& subcommand, const ConfigDocument& doc);

}  // namespace tto
