#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "subdiff/config.hpp"

namespace subdiff {

const char* artifact_version();

/// Experiment kinds accepted in the `kind` field.
const std::vector<std::string>& experiment_kinds();

struct RunOptions {
  std::filesystem::path out = "out";
  int workers = 0;                      ///< 0 = OpenMP default; does not change results
  std::optional<std::uint64_t> seed;    ///< overrides the configured seed
};

/// One pass/fail line of summary.txt.
struct AcceptanceItem {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct RunResult {
  std::vector<AcceptanceItem> items;
  std::vector<std::filesystem::path> files;
  bool ok() const;
};

/// Runs one configured experiment and writes its CSV tables, report.json and
/// summary.txt into opt.out. Every file carries the config hash, seed, n, dt and
/// artifact version. Throws ConfigError on invalid or unresolvable configuration.
RunResult run_experiment(Config cfg, const RunOptions& opt);

}  // namespace subdiff
