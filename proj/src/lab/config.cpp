#include "rmlab/lab/config.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "rmlab/error.hpp"

namespace rmlab::lab {

using nlohmann::json;

namespace {

struct NameEntry {
  ExperimentName name;
  std::string_view text;
  std::string_view help;
};

constexpr std::array<NameEntry, 8> kNames = {{
    {ExperimentName::Thm1LambdaMaxLaplacian, "thm1_lambda_max_laplacian",
     "lambda_max_ratio = lambda_max(L) / (sigma sqrt(n log n)) and norm_ratio = ||L|| / "
     "(sigma sqrt(n log n)), Lanczos. Needs moments of order p > 6; the law should have "
     "mean 0 and sd 1 (flagged otherwise). Also records the running min/max of trial 0 "
     "across the grid."},
    {ExperimentName::Cor1Regimes, "cor1_regimes",
     "lambda_max_sigma_ratio = lambda_max(L) / (sigma sqrt(n log n)) and, for mu != 0, "
     "lambda_max_mu_ratio = lambda_max(L) / (n mu). The regime indicator "
     "mu / (sigma sqrt(log n / n)) is reported per n. Needs p > 6."},
    {ExperimentName::Thm2GammaM, "thm2_gamma_m",
     "ks_gamma_m and w1_gamma_m between the normalized Laplacian ESD "
     "(lambda - n mu) / (sqrt(n) sigma) and gamma_M, plus m2, m4 and m4_over_m2sq of the "
     "ESD without the kernel eigenvalue. Needs p > 4."},
    {ExperimentName::Thm3Semicircle, "thm3_semicircle",
     "ks_semicircle, w1_semicircle and m2 of the adjacency ESD (lambda + mu) / (sqrt(n) "
     "sigma). Needs p >= 2. A zero-variance law is flagged and records "
     "mass_at_minus_mu, the fraction of raw eigenvalues at -mu, instead."},
    {ExperimentName::Cor2Dilute, "cor2_dilute",
     "ks_semicircle of the ESD of A / alpha_n, alpha_n = sqrt(n p (1 - p)), and alpha_n "
     "itself. Bernoulli family only, usually with a p schedule. Degenerate p is flagged "
     "and records mass_at_minus_mu."},
    {ExperimentName::Thm5AdjacencyNorm, "thm5_adjacency_norm",
     "norm_ratio = ||A|| / (sqrt(n) sigma), lambda_max_ratio and lambda_kn_ratio = "
     "lambda_{k_n}(A) / (sqrt(n) sigma) with k_n = ceil(k_fraction sqrt(n)); for mu != 0 "
     "also lambda_max_mu_ratio = lambda_max / (n mu) and norm_mu_ratio = ||A|| / (n |mu|). "
     "Needs p > 6."},
    {ExperimentName::OracleMoments, "oracle_moments",
     "trace_power_r = tr(L^r) for r = 1..max_power at n <= 6; the reference section holds "
     "the exact circuit expansion of E tr(L^r)."},
    {ExperimentName::LemmaRowsums, "lemma_rowsums",
     "s1_abs_dev = |S1 - E S1| / n^2 and s2_abs_dev = |S2 - E S2| / n^2 with S1 the sum of "
     "squared entries and S2 the sum of squared row sums."},
}};

[[noreturn]] void config_error(const std::string& msg) { raise(ErrorKind::Config, msg); }

template <class T>
T get_field(const json& j, const char* key) {
  if (!j.contains(key)) config_error(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    config_error(std::string("field '") + key + "': " + e.what());
  }
}

std::uint64_t get_unsigned(const json& v, const std::string& what) {
  if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
    config_error("'" + what + "' must be a nonnegative integer");
  }
  return v.get<std::uint64_t>();
}

}  // namespace

const std::vector<ExperimentName>& all_experiments() {
  static const std::vector<ExperimentName> names = [] {
    std::vector<ExperimentName> out;
    for (const auto& e : kNames) out.push_back(e.name);
    return out;
  }();
  return names;
}

std::string_view to_string(ExperimentName name) {
  for (const auto& e : kNames) {
    if (e.name == name) return e.text;
  }
  return "unknown";
}

ExperimentName experiment_from_string(std::string_view name) {
  for (const auto& e : kNames) {
    if (e.text == name) return e.name;
  }
  config_error("unknown experiment '" + std::string(name) + "'");
}

double Schedule::at(std::size_t n) const {
  const double nd = static_cast<double>(n);
  switch (form) {
    case Form::Constant: return c;
    case Form::Power: return c * std::pow(nd, a);
    case Form::LogRoot: return c * std::sqrt(std::log(nd) / nd) * multiplier;
  }
  return c;
}

EntryLaw LawSpec::at(std::size_t n) const {
  auto need = [&](const std::optional<Schedule>& s, const char* what) {
    if (!s) config_error("law '" + family + "' needs parameter '" + what + "'");
    return s->at(n);
  };
  try {
    if (family == "bernoulli") return EntryLaw::bernoulli(need(p, "p"));
    if (family == "centered_bernoulli") return EntryLaw::centered_bernoulli(need(p, "p"));
    if (family == "sign_sparse") return EntryLaw::sign_sparse(need(p, "p"));
    if (family == "gaussian") {
      return EntryLaw::gaussian(mean ? mean->at(n) : 0.0, sd ? sd->at(n) : 1.0);
    }
    if (family == "rademacher") return EntryLaw::rademacher();
    if (family == "table") {
      return EntryLaw::table(values, probs, certified_order.value_or(kUnboundedOrder));
    }
  } catch (const Error& e) {
    config_error("law '" + family + "' at n = " + std::to_string(n) + ": " + e.what());
  }
  config_error("unknown law family '" + family + "'");
}

void ExperimentConfig::validate() const {
  if (n_grid.empty()) config_error("n_grid is empty");
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    if (n_grid[i] < 2) config_error("n_grid entries must be at least 2");
    if (i > 0 && n_grid[i] <= n_grid[i - 1]) config_error("n_grid must be strictly ascending");
  }
  if (trials < 1) config_error("trials must be at least 1");
  if (!(k_fraction > 0.0 && k_fraction <= 1.0)) config_error("k_fraction must lie in (0, 1]");
  for (std::size_t n : n_grid) (void)law.at(n);
  if (name == ExperimentName::Cor2Dilute && law.family != "bernoulli") {
    config_error("cor2_dilute needs the bernoulli family");
  }
  if (name == ExperimentName::OracleMoments) {
    if (n_grid.back() > 6) config_error("oracle_moments is limited to n <= 6");
    if (max_power < 1 || max_power > 6) config_error("max_power must lie in 1..6");
  }
}

std::size_t ExperimentConfig::k_n(std::size_t n) const {
  const double k = std::ceil(k_fraction * std::sqrt(static_cast<double>(n)) - 1e-12);
  return std::clamp<std::size_t>(static_cast<std::size_t>(k), 1, n);
}

json to_json(const Schedule& s) {
  switch (s.form) {
    case Schedule::Form::Constant: return s.c;
    case Schedule::Form::Power: return {{"form", "power"}, {"c", s.c}, {"a", s.a}};
    case Schedule::Form::LogRoot:
      return {{"form", "log_root"}, {"c", s.c}, {"multiplier", s.multiplier}};
  }
  return s.c;
}

Schedule schedule_from_json(const json& j) {
  if (j.is_number()) return Schedule::constant(j.get<double>());
  if (!j.is_object()) config_error("a schedule is a number or an object with 'form'");
  const auto form = get_field<std::string>(j, "form");
  Schedule s;
  s.c = get_field<double>(j, "c");
  if (form == "constant") {
    s.form = Schedule::Form::Constant;
  } else if (form == "power") {
    s.form = Schedule::Form::Power;
    s.a = get_field<double>(j, "a");
  } else if (form == "log_root") {
    s.form = Schedule::Form::LogRoot;
    s.multiplier = j.contains("multiplier") ? get_field<double>(j, "multiplier") : 1.0;
  } else {
    config_error("unknown schedule form '" + form + "'");
  }
  return s;
}

json to_json(const LawSpec& law) {
  json j = {{"family", law.family}};
  if (law.p) j["p"] = to_json(*law.p);
  if (law.mean) j["mean"] = to_json(*law.mean);
  if (law.sd) j["sd"] = to_json(*law.sd);
  if (law.family == "table") {
    j["values"] = law.values;
    j["probs"] = law.probs;
  }
  if (law.certified_order) j["certified_order"] = *law.certified_order;
  return j;
}

LawSpec law_spec_from_json(const json& j) {
  if (!j.is_object()) config_error("'law' must be an object");
  LawSpec law;
  law.family = get_field<std::string>(j, "family");
  if (j.contains("p")) law.p = schedule_from_json(j.at("p"));
  if (j.contains("mean")) law.mean = schedule_from_json(j.at("mean"));
  if (j.contains("sd")) law.sd = schedule_from_json(j.at("sd"));
  if (j.contains("values")) law.values = get_field<std::vector<double>>(j, "values");
  if (j.contains("probs")) law.probs = get_field<std::vector<double>>(j, "probs");
  if (j.contains("certified_order")) law.certified_order = get_field<double>(j, "certified_order");
  return law;
}

json to_json(const ExperimentConfig& c) {
  return {{"name", std::string(to_string(c.name))},
          {"n_grid", c.n_grid},
          {"trials", c.trials},
          {"law", to_json(c.law)},
          {"master_seed", c.master_seed},
          {"k_fraction", c.k_fraction},
          {"output_dir", c.output_dir},
          {"threads", c.threads},
          {"max_power", c.max_power}};
}

ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) config_error("experiment config must be a JSON object");
  static const std::vector<std::string> known = {"name", "n_grid", "trials", "law", "master_seed",
                                                 "k_fraction", "output_dir", "threads", "max_power"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      config_error("unknown config field '" + key + "'");
    }
  }
  ExperimentConfig c;
  c.name = experiment_from_string(get_field<std::string>(j, "name"));
  const auto grid = get_field<json>(j, "n_grid");
  if (!grid.is_array()) config_error("'n_grid' must be an array");
  for (const auto& v : grid) c.n_grid.push_back(get_unsigned(v, "n_grid"));
  c.trials = get_unsigned(get_field<json>(j, "trials"), "trials");
  c.law = law_spec_from_json(get_field<json>(j, "law"));
  c.master_seed = get_unsigned(get_field<json>(j, "master_seed"), "master_seed");
  if (j.contains("k_fraction")) c.k_fraction = get_field<double>(j, "k_fraction");
  if (j.contains("output_dir")) c.output_dir = get_field<std::string>(j, "output_dir");
  if (j.contains("threads")) c.threads = static_cast<unsigned>(get_unsigned(j.at("threads"), "threads"));
  if (j.contains("max_power")) c.max_power = get_field<int>(j, "max_power");
  c.validate();
  return c;
}

std::string experiment_help() {
  std::ostringstream os;
  os << "Experiments (config field \"name\"):\n";
  for (const auto& e : kNames) os << "  " << e.text << "\n      " << e.help << "\n";
  return os.str();
}

}  // namespace rmlab::lab
