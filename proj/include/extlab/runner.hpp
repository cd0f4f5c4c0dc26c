#pragma once

#include "extlab/harness.hpp"

#include <filesystem>
#include <optional>

namespace extlab {

struct ExperimentSpec {
  std::string id;
  nlohmann::json params;  // overrides; null when absent
  std::optional<double> tolerance;
  std::optional<std::uint64_t> seed;
};

struct RunConfig {
  std::string suite = "custom";
  std::optional<std::uint64_t> seed;
  std::vector<ExperimentSpec> experiments;
};

// Strict parse; malformed JSON reports line:column, schema problems report the offending path.
RunConfig parse_config(const std::string& text, const std::string& source = "<config>");
RunConfig load_config(const std::filesystem::path& path);

struct SuiteOptions {
  std::optional<std::uint64_t> seed_override;
  int jobs = 1;
  std::filesystem::path out_dir;
};

struct SuiteOutcome {
  std::vector<ExperimentResult> results;  // config order; empty entries for experiments that raised
  std::vector<std::string> errors;        // "id: message"
  bool resolution_failure = false;
  int exit_code = 0;
};

std::uint64_t experiment_seed(const RunConfig& cfg, const ExperimentSpec& spec, const SuiteOptions& opt);

// Runs every experiment, writes <id>.csv, <id>.summary.json, <id>.meta.json, summary.json and timing.json.
SuiteOutcome run_suite(const RunConfig& cfg, const SuiteOptions& opt);

// Write through a temporary file and rename.
void write_atomic(const std::filesystem::path& path, const std::string& content);

std::string catalog_listing();

}  // namespace extlab
