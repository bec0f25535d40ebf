#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pxlap/config.hpp"
#include "pxlap/report.hpp"

namespace pxlap {

// Outcome of one CLI-level command: a JSON report, named CSV documents, and
// the success verdict the exit code derives from.
struct RunOutput {
  nlohmann::json report;
  std::vector<std::pair<std::string, std::string>> files;  // filename -> content
  bool ok = false;
  std::string summary;  // human readable table / status lines
};

// Three-solution solve; emits solution_K1/K2/K3.csv and the full report.
RunOutput run_solve(const LoadedConfig& cfg);

// Randomized Luxemburg / Holder / Poincare property suites plus the
// log-Holder diagnostic.  The Poincare bound is assembled from the discrete
// fundamental-theorem chain, so a violation is a genuine property failure.
RunOutput run_spaces(const LoadedConfig& cfg);

// Fibering sweep over the lambda list with the configured positive seed;
// verifies that t_lambda strictly decreases.  Emits fiber.csv.
RunOutput run_fiber(const LoadedConfig& cfg, const std::vector<double>& lambdas);

}  // namespace pxlap
