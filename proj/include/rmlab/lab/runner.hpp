#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rmlab/lab/config.hpp"

namespace rmlab::lab {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kArtifactVersion = "0.1.0";

struct TrialRow {
  std::size_t n = 0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::string statistic;
  double value = 0.0;

  friend bool operator==(const TrialRow&, const TrialRow&) = default;
};

struct SummaryRow {
  std::size_t n = 0;
  std::string statistic;
  std::size_t count = 0;
  double median = 0.0;
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation, 0 for one trial
  double q1 = 0.0;
  double q3 = 0.0;
};

/// A deterministic value the statistic is compared against, e.g. the
/// limit of a ratio or an exact expected trace.
struct Reference {
  std::size_t n = 0;
  std::string statistic;
  double value = 0.0;
  std::string source;
};

struct Flag {
  std::string code;
  std::string message;
  std::optional<std::size_t> n;
};

struct ExperimentRecord {
  int schema_version = kSchemaVersion;
  std::string artifact_version = kArtifactVersion;
  ExperimentConfig config;
  std::vector<TrialRow> rows;
  std::vector<SummaryRow> summary;
  std::vector<Reference> references;
  std::vector<Flag> flags;
  /// Experiment-specific extras (running records, solver diagnostics).
  nlohmann::json extensions = nlohmann::json::object();
  double wall_time_seconds = 0.0;

  bool has_flag(const std::string& code) const;
};

/// Seed of trial t at grid position g: derive_trial_seed(master, g * trials + t).
std::uint64_t trial_seed(const ExperimentConfig& config, std::size_t grid_position, std::size_t trial);

/// Linear-interpolation quantile of an unsorted sample, q in [0, 1].
double quantile(std::vector<double> values, double q);

/// Per (n, statistic) summaries, in row order of first appearance.
std::vector<SummaryRow> summarize(const std::vector<TrialRow>& rows);

/// Validates the config, checks the moment condition at every n (precondition
/// error naming the required order) and runs all trials.
ExperimentRecord run_experiment(const ExperimentConfig& config);

nlohmann::json to_json(const ExperimentRecord& record);
/// A schema_version other than kSchemaVersion is a version error.
ExperimentRecord record_from_json(const nlohmann::json& j);

struct Divergence {
  std::size_t n = 0;
  std::size_t trial = 0;
  std::string statistic;
  double recorded = 0.0;
  double replayed = 0.0;
  std::string detail;
};

struct ReplayReport {
  bool identical = false;
  std::optional<Divergence> first_divergence;
  std::vector<std::string> warnings;
  ExperimentRecord replayed;
};

/// Re-runs the embedded config and compares every per-trial value bit for bit.
ReplayReport replay(const ExperimentRecord& record);
ReplayReport replay_file(const std::string& path);

}  // namespace rmlab::lab
