#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "rmlab/ensemble.hpp"

namespace rmlab::lab {

enum class ExperimentName {
  Thm1LambdaMaxLaplacian,
  Cor1Regimes,
  Thm2GammaM,
  Thm3Semicircle,
  Cor2Dilute,
  Thm5AdjacencyNorm,
  OracleMoments,
  LemmaRowsums,
};

const std::vector<ExperimentName>& all_experiments();
std::string_view to_string(ExperimentName name);
/// Unknown names raise a config error.
ExperimentName experiment_from_string(std::string_view name);

/// A law parameter as a function of n: c, c * n^a, or
/// c * sqrt(log n / n) * multiplier.
struct Schedule {
  enum class Form { Constant, Power, LogRoot };
  Form form = Form::Constant;
  double c = 0.0;
  double a = 0.0;
  double multiplier = 1.0;

  static Schedule constant(double c) { return {Form::Constant, c, 0.0, 1.0}; }
  double at(std::size_t n) const;

  friend bool operator==(const Schedule&, const Schedule&) = default;
};

/// Entry law family plus its (possibly n-dependent) parameters.
struct LawSpec {
  std::string family = "rademacher";
  std::optional<Schedule> p;
  std::optional<Schedule> mean;
  std::optional<Schedule> sd;
  std::vector<double> values;
  std::vector<double> probs;
  std::optional<double> certified_order;

  /// Raises a config error naming n when the parameters are invalid there.
  EntryLaw at(std::size_t n) const;

  friend bool operator==(const LawSpec&, const LawSpec&) = default;
};

struct ExperimentConfig {
  ExperimentName name = ExperimentName::Thm1LambdaMaxLaplacian;
  std::vector<std::size_t> n_grid;
  std::size_t trials = 1;
  LawSpec law;
  std::uint64_t master_seed = 0;
  /// k_n = ceil(k_fraction * sqrt(n)).
  double k_fraction = 1.0;
  std::string output_dir = ".";
  /// Worker threads per (n, experiment) cell; 0 picks the hardware count.
  /// Results do not depend on it.
  unsigned threads = 0;
  /// Highest power r of tr(Delta^r) for oracle_moments.
  int max_power = 4;

  /// Structural checks plus evaluating the law at every grid point.
  void validate() const;
  std::size_t k_n(std::size_t n) const;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

nlohmann::json to_json(const Schedule& s);
Schedule schedule_from_json(const nlohmann::json& j);
nlohmann::json to_json(const LawSpec& law);
LawSpec law_spec_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ExperimentConfig& config);
/// Parses and validates; any malformed field is a config error.
ExperimentConfig config_from_json(const nlohmann::json& j);

/// One paragraph per experiment: the statistics it records and the moment
/// order it requires. Used for `exp --help`.
std::string experiment_help();

}  // namespace rmlab::lab
