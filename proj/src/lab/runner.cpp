#include "rmlab/lab/runner.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "rmlab/circuits.hpp"
#include "rmlab/ensemble.hpp"
#include "rmlab/error.hpp"
#include "rmlab/lab/io.hpp"
#include "rmlab/limit_laws.hpp"
#include "rmlab/spectra.hpp"
#include "rmlab/stats.hpp"

namespace rmlab::lab {

using nlohmann::json;

namespace {

struct MomentRequirement {
  double p = 0.0;
  bool strict = false;
  bool degenerate_is_flag = false;
};

MomentRequirement requirement(ExperimentName name) {
  switch (name) {
    case ExperimentName::Thm1LambdaMaxLaplacian:
    case ExperimentName::Cor1Regimes:
    case ExperimentName::Thm5AdjacencyNorm: return {6.0, true, false};
    case ExperimentName::Thm2GammaM: return {4.0, true, false};
    case ExperimentName::Thm3Semicircle:
    case ExperimentName::Cor2Dilute: return {2.0, false, true};
    case ExperimentName::OracleMoments:
    case ExperimentName::LemmaRowsums: return {0.0, false, true};
  }
  return {};
}

void check_moments(const ExperimentConfig& config, std::size_t n, const EntryLaw& law) {
  const auto req = requirement(config.name);
  if (req.p <= 0.0) return;
  if (law.degenerate() && req.degenerate_is_flag) return;
  const bool ok = validate_condition5(law, req.p) && (!req.strict || law.certified_moment_order() > req.p);
  if (ok) return;
  std::ostringstream os;
  os << to_string(config.name) << " requires nonzero variance and finite standardized moments of order p "
     << (req.strict ? "> " : ">= ") << req.p << "; law " << law.name() << " at n = " << n;
  if (law.degenerate()) {
    os << " has zero variance";
  } else {
    os << " certifies order " << law.certified_moment_order();
  }
  raise(ErrorKind::Precondition, os.str());
}

using Stats = std::vector<std::pair<std::string, double>>;

struct TrialOutput {
  Stats stats;
  bool dense_fallback = false;
};

struct Cell {
  const ExperimentConfig& config;
  std::size_t n;
  EntryLaw law;
  const DensityGrid* gamma = nullptr;
  const DensityGrid* semicircle = nullptr;
};

SymmetricMatrix negated(const SymmetricMatrix& m) {
  SymmetricMatrix out(m.n());
  for (std::size_t i = 0; i < m.n(); ++i) {
    const auto row = m.lower_row(i);
    for (std::size_t j = 0; j <= i; ++j) out.set(i, j, -row[j]);
  }
  return out;
}

// Largest and smallest eigenvalue by Lanczos.
std::pair<double, double> extreme_eigenvalues(const SymmetricMatrix& m, bool& fallback) {
  LanczosReport top, bottom;
  const double hi = lambda_max_fast(m, 1, {}, &top).front();
  const double lo = -lambda_max_fast(negated(m), 1, {}, &bottom).front();
  fallback = top.dense_fallback || bottom.dense_fallback;
  return {hi, lo};
}

Window covering(const Esd& esd) {
  Window w;
  if (!esd.empty()) {
    w.lo = std::min(w.lo, esd.support().front());
    w.hi = std::max(w.hi, esd.support().back());
  }
  return w;
}

double mass_at(const Spectrum& s, double x) {
  const double tol = 1e-9 * std::max(1.0, s.spectral_norm());
  std::size_t count = 0;
  for (double v : s.eigenvalues) count += std::abs(v - x) <= tol ? 1 : 0;
  return static_cast<double>(count) / static_cast<double>(s.n());
}

double dense_trace_power(const SymmetricMatrix& m, int r) {
  const std::size_t n = m.n();
  const auto base = m.to_dense();
  std::vector<double> p(base), tmp(n * n);
  for (int step = 1; step < r; ++step) {
    std::fill(tmp.begin(), tmp.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j) tmp[i * n + j] += p[i * n + k] * base[k * n + j];
    p.swap(tmp);
  }
  double t = 0.0;
  for (std::size_t i = 0; i < n; ++i) t += p[i * n + i];
  return t;
}

TrialOutput run_trial(const Cell& cell, std::uint64_t trial_index) {
  const std::size_t n = cell.n;
  const double nd = static_cast<double>(n);
  const EntryLaw& law = cell.law;
  const auto adjacency = sample_adjacency({n, law, cell.config.master_seed, trial_index});
  TrialOutput out;
  auto& st = out.stats;

  switch (cell.config.name) {
    case ExperimentName::Thm1LambdaMaxLaplacian:
    case ExperimentName::Cor1Regimes: {
      const auto l = build_laplacian(adjacency);
      const auto [hi, lo] = extreme_eigenvalues(l, out.dense_fallback);
      const double scale = law.sd() * std::sqrt(nd * std::log(nd));
      if (cell.config.name == ExperimentName::Thm1LambdaMaxLaplacian) {
        st.emplace_back("lambda_max_ratio", hi / scale);
        st.emplace_back("norm_ratio", std::max(hi, -lo) / scale);
      } else {
        st.emplace_back("lambda_max_sigma_ratio", hi / scale);
        if (law.mean() != 0.0) st.emplace_back("lambda_max_mu_ratio", hi / (nd * law.mean()));
      }
      break;
    }
    case ExperimentName::Thm2GammaM: {
      const auto l = build_laplacian(adjacency);
      auto s = eigenvalues_sym(l, SpectrumSource::Laplacian);
      const auto esd = normalize_laplacian_spectrum(s, n, law.mean(), law.sd());
      st.emplace_back("ks_gamma_m", ks_distance(esd, [&](double x) { return cell.gamma->cdf_at(x); }));
      st.emplace_back("w1_gamma_m", w1_distance(esd, *cell.gamma, covering(esd)));
      // Drop one copy of the kernel eigenvalue (the all-ones direction).
      auto& ev = s.eigenvalues;
      const auto kernel = std::min_element(ev.begin(), ev.end(),
                                           [](double a, double b) { return std::abs(a) < std::abs(b); });
      ev.erase(kernel);
      const auto bulk = normalize_laplacian_spectrum(s, n, law.mean(), law.sd());
      const auto m = empirical_moments(bulk, 4);
      st.emplace_back("m2", m[2]);
      st.emplace_back("m4", m[4]);
      st.emplace_back("m4_over_m2sq", m[4] / (m[2] * m[2]));
      break;
    }
    case ExperimentName::Thm3Semicircle: {
      const auto s = eigenvalues_sym(adjacency, SpectrumSource::Adjacency);
      if (law.degenerate()) {
        st.emplace_back("mass_at_minus_mu", mass_at(s, -law.mean()));
        break;
      }
      const auto esd = normalize_adjacency_spectrum(s, n, law.mean(), law.sd());
      st.emplace_back("ks_semicircle", ks_distance(esd, semicircle_cdf));
      st.emplace_back("w1_semicircle", w1_distance(esd, *cell.semicircle, covering(esd)));
      st.emplace_back("m2", empirical_moments(esd, 2)[2]);
      break;
    }
    case ExperimentName::Cor2Dilute: {
      const auto s = eigenvalues_sym(adjacency, SpectrumSource::Adjacency);
      const double p = law.mean();
      const double alpha = std::sqrt(nd * p * (1.0 - p));
      st.emplace_back("alpha_n", alpha);
      if (law.degenerate()) {
        st.emplace_back("mass_at_minus_mu", mass_at(s, -law.mean()));
        break;
      }
      const auto esd = normalize_dilute_adjacency(s, n, p);
      st.emplace_back("ks_semicircle", ks_distance(esd, semicircle_cdf));
      break;
    }
    case ExperimentName::Thm5AdjacencyNorm: {
      const std::size_t k = cell.config.k_n(n);
      double hi = 0.0, lo = 0.0, kth = 0.0;
      if (k > 16) {
        // 200 Lanczos steps cannot resolve this many Ritz values; solve densely.
        const auto s = eigenvalues_sym(adjacency, SpectrumSource::Adjacency);
        hi = s.largest();
        lo = s.smallest();
        kth = s.kth_largest(k);
      } else {
        LanczosReport top, bottom;
        const auto vals = lambda_max_fast(adjacency, k, {}, &top);
        hi = vals.front();
        kth = vals.back();
        lo = -lambda_max_fast(negated(adjacency), 1, {}, &bottom).front();
        out.dense_fallback = top.dense_fallback || bottom.dense_fallback;
      }
      const double scale = std::sqrt(nd) * law.sd();
      const double norm = std::max(hi, -lo);
      st.emplace_back("norm_ratio", norm / scale);
      st.emplace_back("lambda_max_ratio", hi / scale);
      st.emplace_back("lambda_kn_ratio", kth / scale);
      if (law.mean() != 0.0) {
        st.emplace_back("lambda_max_mu_ratio", hi / (nd * law.mean()));
        st.emplace_back("norm_mu_ratio", norm / (nd * std::abs(law.mean())));
      }
      break;
    }
    case ExperimentName::OracleMoments: {
      const auto l = build_laplacian(adjacency);
      for (int r = 1; r <= cell.config.max_power; ++r) {
        st.emplace_back("trace_power_" + std::to_string(r), dense_trace_power(l, r));
      }
      break;
    }
    case ExperimentName::LemmaRowsums: {
      const auto s = row_sum_statistics(adjacency);
      const auto e = expected_row_sum_statistics(n, law.mean(), law.variance());
      st.emplace_back("s1_abs_dev", std::abs(s.s1 - e.s1) / (nd * nd));
      st.emplace_back("s2_abs_dev", std::abs(s.s2 - e.s2) / (nd * nd));
      break;
    }
  }
  for (const auto& [name, value] : st) {
    if (!std::isfinite(value)) {
      raise(ErrorKind::Numeric, "statistic " + name + " is not finite at n = " + std::to_string(n));
    }
  }
  return out;
}

std::vector<TrialOutput> run_cell(const Cell& cell, std::size_t grid_position) {
  const auto& config = cell.config;
  std::vector<TrialOutput> outputs(config.trials);
  unsigned threads = config.threads != 0 ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, config.trials));

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto work = [&] {
    for (;;) {
      const std::size_t t = next.fetch_add(1);
      if (t >= config.trials) return;
      try {
        outputs[t] = run_trial(cell, grid_position * config.trials + t);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(config.trials);
      }
    }
  };
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(work);
  }
  if (error) std::rethrow_exception(error);
  return outputs;
}

void add_references(ExperimentRecord& rec, std::size_t n, const EntryLaw& law) {
  auto add = [&](const std::string& stat, double value, const std::string& source) {
    rec.references.push_back({n, stat, value, source});
  };
  const double nd = static_cast<double>(n);
  switch (rec.config.name) {
    case ExperimentName::Thm1LambdaMaxLaplacian:
      add("lambda_max_ratio", std::sqrt(2.0), "limit in probability");
      add("norm_ratio", std::sqrt(2.0), "limit in probability");
      break;
    case ExperimentName::Cor1Regimes: {
      const double indicator = law.mean() / (law.sd() * std::sqrt(std::log(nd) / nd));
      add("regime_indicator", indicator, "mu / (sigma sqrt(log n / n))");
      add("lambda_max_sigma_ratio", std::sqrt(2.0), "limit when |mu| << sigma sqrt(log n / n)");
      if (law.mean() > 0.0) add("lambda_max_mu_ratio", 1.0, "limit when mu >> sigma sqrt(log n / n)");
      if (law.mean() < 0.0) add("lambda_max_mu_ratio", 0.0, "limit when -mu >> sigma sqrt(log n / n)");
      break;
    }
    case ExperimentName::Thm2GammaM: {
      const auto m = gamma_m_moments(4);
      add("ks_gamma_m", 0.0, "weak limit");
      add("m2", m[2], "free cumulants");
      add("m4", m[4], "free cumulants");
      add("m4_over_m2sq", m[4] / (m[2] * m[2]), "free cumulants");
      add("m4_over_m2sq", 8.0 / 3.0, "value stated in the paper");
      break;
    }
    case ExperimentName::Thm3Semicircle:
      if (law.degenerate()) {
        add("mass_at_minus_mu", (nd - 1.0) / nd, "J - I structure");
      } else {
        add("ks_semicircle", 0.0, "weak limit");
        add("m2", 1.0, "semicircle");
      }
      break;
    case ExperimentName::Cor2Dilute:
      if (law.degenerate()) {
        add("mass_at_minus_mu", (nd - 1.0) / nd, "J - I structure");
      } else {
        add("ks_semicircle", 0.0, "weak limit");
      }
      break;
    case ExperimentName::Thm5AdjacencyNorm:
      add("norm_ratio", 2.0, "limit when mu << sigma / sqrt(n)");
      add("lambda_max_ratio", 2.0, "limit when mu << sigma / sqrt(n)");
      add("lambda_kn_ratio", 2.0, "limit when mu << sigma / sqrt(n)");
      if (law.mean() > 0.0) add("lambda_max_mu_ratio", 1.0, "limit when mu >> sigma / sqrt(n)");
      if (law.mean() != 0.0) add("norm_mu_ratio", 1.0, "limit when |mu| >> sigma / sqrt(n)");
      break;
    case ExperimentName::OracleMoments:
      for (int r = 1; r <= rec.config.max_power; ++r) {
        const auto profile = EdgeMomentProfile::from_law(law, r);
        add("trace_power_" + std::to_string(r),
            expected_trace_moment(static_cast<int>(n), r, profile).value, "circuit expansion");
      }
      break;
    case ExperimentName::LemmaRowsums:
      add("s1_abs_dev", 0.0, "almost sure limit");
      add("s2_abs_dev", 0.0, "almost sure limit");
      break;
  }
}

void add_flags(ExperimentRecord& rec, std::size_t n, const EntryLaw& law) {
  const auto& c = rec.config;
  if (c.name == ExperimentName::Thm1LambdaMaxLaplacian && (law.mean() != 0.0 || law.variance() != 1.0)) {
    rec.flags.push_back({"nonstandard_law",
                         "the lambda_max(L) / sqrt(n log n) limit assumes mean 0 and variance 1; got " +
                             law.name(),
                         n});
  }
  if ((c.name == ExperimentName::Thm3Semicircle || c.name == ExperimentName::Cor2Dilute) && law.degenerate()) {
    rec.flags.push_back({"alpha_n_not_diverging",
                         "entries have zero variance, so alpha_n = sqrt(n p (1 - p)) does not tend to "
                         "infinity and the semicircle limit does not apply; A = mu (J - I) has eigenvalue "
                         "-mu with multiplicity n - 1",
                         n});
  }
  if (c.name == ExperimentName::Thm5AdjacencyNorm && c.k_n(n) > 16) {
    rec.flags.push_back({"dense_solver", "k_n = " + std::to_string(c.k_n(n)) + " uses the dense solver", n});
  }
}

json to_json(const TrialRow& r) {
  return {{"n", r.n}, {"trial", r.trial}, {"seed", r.seed}, {"statistic", r.statistic}, {"value", r.value}};
}

json to_json(const SummaryRow& s) {
  return {{"n", s.n},       {"statistic", s.statistic}, {"count", s.count}, {"median", s.median},
          {"mean", s.mean}, {"sd", s.sd},               {"q1", s.q1},       {"q3", s.q3},
          {"iqr", s.q3 - s.q1}};
}

template <class T>
T field(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    raise(ErrorKind::Config, std::string("record field '") + key + "': " + e.what());
  }
}

}  // namespace

bool ExperimentRecord::has_flag(const std::string& code) const {
  return std::any_of(flags.begin(), flags.end(), [&](const Flag& f) { return f.code == code; });
}

std::uint64_t trial_seed(const ExperimentConfig& config, std::size_t grid_position, std::size_t trial) {
  return derive_trial_seed(config.master_seed, grid_position * config.trials + trial);
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) raise(ErrorKind::Contract, "quantile of an empty sample");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return frac == 0.0 ? values[lo] : values[lo] + frac * (values[hi] - values[lo]);
}

std::vector<SummaryRow> summarize(const std::vector<TrialRow>& rows) {
  std::vector<std::pair<std::size_t, std::string>> order;
  std::map<std::pair<std::size_t, std::string>, std::vector<double>> groups;
  for (const auto& r : rows) {
    auto key = std::make_pair(r.n, r.statistic);
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second.push_back(r.value);
  }
  std::vector<SummaryRow> out;
  for (const auto& key : order) {
    const auto& v = groups.at(key);
    SummaryRow s;
    s.n = key.first;
    s.statistic = key.second;
    s.count = v.size();
    double sum = 0.0;
    for (double x : v) sum += x;
    s.mean = sum / static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - s.mean) * (x - s.mean);
    s.sd = v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0;
    s.median = quantile(v, 0.5);
    s.q1 = quantile(v, 0.25);
    s.q3 = quantile(v, 0.75);
    out.push_back(s);
  }
  return out;
}

ExperimentRecord run_experiment(const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  config.validate();
  for (std::size_t n : config.n_grid) check_moments(config, n, config.law.at(n));

  ExperimentRecord rec;
  rec.config = config;
  std::optional<DensityGrid> gamma, semicircle;
  if (config.name == ExperimentName::Thm2GammaM) gamma = gamma_m_density();
  if (config.name == ExperimentName::Thm3Semicircle) semicircle = semicircle_density();

  std::size_t fallbacks = 0;
  json running = json::array();
  double run_min = 0.0, run_max = 0.0;
  for (std::size_t g = 0; g < config.n_grid.size(); ++g) {
    const std::size_t n = config.n_grid[g];
    const Cell cell{config, n, config.law.at(n), gamma ? &*gamma : nullptr, semicircle ? &*semicircle : nullptr};
    const auto outputs = run_cell(cell, g);
    for (std::size_t t = 0; t < outputs.size(); ++t) {
      fallbacks += outputs[t].dense_fallback ? 1 : 0;
      for (const auto& [name, value] : outputs[t].stats) {
        rec.rows.push_back({n, t, trial_seed(config, g, t), name, value});
      }
    }
    add_references(rec, n, cell.law);
    add_flags(rec, n, cell.law);

    if (config.name == ExperimentName::Thm1LambdaMaxLaplacian) {
      // Independent matrices across the grid: track the record values of trial 0.
      const double v = outputs.front().stats.front().second;
      run_min = g == 0 ? v : std::min(run_min, v);
      run_max = g == 0 ? v : std::max(run_max, v);
      running.push_back({{"n", n}, {"value", v}, {"running_min", run_min}, {"running_max", run_max}});
    }
  }
  if (config.name == ExperimentName::Cor2Dilute) {
    for (std::size_t g = 1; g < config.n_grid.size(); ++g) {
      const auto a = config.law.at(config.n_grid[g - 1]);
      const auto b = config.law.at(config.n_grid[g]);
      const double an = std::sqrt(static_cast<double>(config.n_grid[g - 1]) * a.variance());
      const double bn = std::sqrt(static_cast<double>(config.n_grid[g]) * b.variance());
      if (!(bn > an)) {
        rec.flags.push_back({"alpha_n_not_increasing", "alpha_n does not grow along the grid", config.n_grid[g]});
        break;
      }
    }
  }
  if (!running.empty()) rec.extensions["running_record"] = running;
  rec.extensions["lanczos_dense_fallbacks"] = fallbacks;
  rec.summary = summarize(rec.rows);
  rec.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

json to_json(const ExperimentRecord& r) {
  json rows = json::array(), summary = json::array(), refs = json::array(), flags = json::array();
  for (const auto& row : r.rows) rows.push_back(to_json(row));
  for (const auto& s : r.summary) summary.push_back(to_json(s));
  for (const auto& ref : r.references) {
    refs.push_back({{"n", ref.n}, {"statistic", ref.statistic}, {"value", ref.value}, {"source", ref.source}});
  }
  for (const auto& f : r.flags) {
    json j = {{"code", f.code}, {"message", f.message}};
    if (f.n) j["n"] = *f.n;
    flags.push_back(j);
  }
  return {{"schema_version", r.schema_version},
          {"artifact_version", r.artifact_version},
          {"config", to_json(r.config)},
          {"rows", rows},
          {"summary", summary},
          {"references", refs},
          {"flags", flags},
          {"extensions", r.extensions},
          {"wall_time_seconds", r.wall_time_seconds}};
}

ExperimentRecord record_from_json(const json& j) {
  if (!j.is_object() || !j.contains("schema_version") || !j.at("schema_version").is_number_integer()) {
    raise(ErrorKind::Version, "record has no integer schema_version");
  }
  const int version = j.at("schema_version").get<int>();
  if (version != kSchemaVersion) {
    raise(ErrorKind::Version, "record schema_version " + std::to_string(version) + " is not the supported " +
                                  std::to_string(kSchemaVersion));
  }
  ExperimentRecord r;
  r.schema_version = version;
  r.artifact_version = field<std::string>(j, "artifact_version");
  r.config = config_from_json(j.at("config"));
  for (const auto& row : j.at("rows")) {
    r.rows.push_back({field<std::size_t>(row, "n"), field<std::size_t>(row, "trial"),
                      field<std::uint64_t>(row, "seed"), field<std::string>(row, "statistic"),
                      field<double>(row, "value")});
  }
  for (const auto& s : j.at("summary")) {
    r.summary.push_back({field<std::size_t>(s, "n"), field<std::string>(s, "statistic"),
                         field<std::size_t>(s, "count"), field<double>(s, "median"), field<double>(s, "mean"),
                         field<double>(s, "sd"), field<double>(s, "q1"), field<double>(s, "q3")});
  }
  if (j.contains("references")) {
    for (const auto& ref : j.at("references")) {
      r.references.push_back({field<std::size_t>(ref, "n"), field<std::string>(ref, "statistic"),
                              field<double>(ref, "value"), field<std::string>(ref, "source")});
    }
  }
  if (j.contains("flags")) {
    for (const auto& f : j.at("flags")) {
      Flag flag{field<std::string>(f, "code"), field<std::string>(f, "message"), std::nullopt};
      if (f.contains("n")) flag.n = field<std::size_t>(f, "n");
      r.flags.push_back(flag);
    }
  }
  if (j.contains("extensions")) r.extensions = j.at("extensions");
  if (j.contains("wall_time_seconds")) r.wall_time_seconds = field<double>(j, "wall_time_seconds");
  return r;
}

ReplayReport replay(const ExperimentRecord& record) {
  ReplayReport report;
  if (record.artifact_version != kArtifactVersion) {
    report.warnings.push_back("record was written by artifact version " + record.artifact_version +
                              ", this is " + kArtifactVersion + "; comparing anyway");
  }
  report.replayed = run_experiment(record.config);
  const auto& a = record.rows;
  const auto& b = report.replayed.rows;
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    const bool same_key = a[i].n == b[i].n && a[i].trial == b[i].trial && a[i].statistic == b[i].statistic &&
                          a[i].seed == b[i].seed;
    const bool same_value = std::bit_cast<std::uint64_t>(a[i].value) == std::bit_cast<std::uint64_t>(b[i].value);
    if (!same_key || !same_value) {
      report.first_divergence = Divergence{a[i].n, a[i].trial, a[i].statistic, a[i].value, b[i].value,
                                           same_key ? "value differs" : "row identity differs"};
      return report;
    }
  }
  if (a.size() != b.size()) {
    const auto& longer = a.size() > b.size() ? a : b;
    const auto& row = longer[std::min(a.size(), b.size())];
    report.first_divergence = Divergence{row.n, row.trial, row.statistic, 0.0, 0.0,
                                         "row count differs: recorded " + std::to_string(a.size()) +
                                             ", replayed " + std::to_string(b.size())};
    return report;
  }
  report.identical = true;
  return report;
}

ReplayReport replay_file(const std::string& path) { return replay(record_from_json(read_json(path))); }

}  // namespace rmlab::lab
