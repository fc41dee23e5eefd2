#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dnkg/config.hpp"
#include "dnkg/error.hpp"
#include "dnkg/experiment.hpp"

namespace dnkg {

struct SweepRun {
  int index = 0;
  std::string hash;
  std::string dir;  // empty when outputs were not written
  bool ok = false;
  std::optional<ErrorCode> code;
  std::string error;
  TrendSummary summary;
  double seconds = 0.0;
};

struct SweepOptions {
  std::string output_dir;  // empty: keep results in memory only
  int max_parallel = 0;    // 0: hardware concurrency
};

// One task per config; a failing run is recorded and does not stop the others.
// Writes run_NNN/ per run, merged windows.csv and summary.csv, and manifest.json.
std::vector<SweepRun> sweep(const std::vector<ExperimentConfig>& configs, const SweepOptions& opts = {});

}  // namespace dnkg
