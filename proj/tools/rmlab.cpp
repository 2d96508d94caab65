// Command-line front end: sampling, spectra, limit laws, the circuit oracle
// and seeded experiments.
#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>

#include "rmlab/circuits.hpp"
#include "rmlab/ensemble.hpp"
#include "rmlab/error.hpp"
#include "rmlab/lab/config.hpp"
#include "rmlab/lab/io.hpp"
#include "rmlab/lab/runner.hpp"
#include "rmlab/limit_laws.hpp"
#include "rmlab/spectra.hpp"
#include "rmlab/stats.hpp"

using namespace rmlab;

namespace {

struct SampleOptions {
  std::size_t n = 0;
  std::string law = "rademacher";
  std::optional<double> p;
  double mu = 0.0;
  double sigma = 1.0;
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;
  std::string matrix = "adjacency";
  std::string out;
};

void add_law_flags(CLI::App* cmd, SampleOptions& o) {
  cmd->add_option("--law", o.law, "bernoulli, centered_bernoulli, sign_sparse, gaussian or rademacher")
      ->capture_default_str();
  cmd->add_option("--p", o.p, "probability parameter of the Bernoulli-type laws");
  cmd->add_option("--mu", o.mu, "Gaussian mean")->capture_default_str();
  cmd->add_option("--sigma", o.sigma, "Gaussian standard deviation")->capture_default_str();
}

void add_sample_flags(CLI::App* cmd, SampleOptions& o, bool with_matrix) {
  cmd->add_option("--n", o.n, "matrix dimension")->required();
  add_law_flags(cmd, o);
  cmd->add_option("--seed", o.seed, "master seed")->capture_default_str();
  cmd->add_option("--trial", o.trial, "trial index used to derive the sub-seed")->capture_default_str();
  if (with_matrix) {
    cmd->add_option("--matrix", o.matrix, "adjacency or laplacian")
        ->check(CLI::IsMember({"adjacency", "laplacian"}))
        ->capture_default_str();
  }
  cmd->add_option("--out", o.out, "output file (stdout when omitted)");
}

EntryLaw law_from(const SampleOptions& o) {
  lab::LawSpec spec;
  spec.family = o.law;
  if (o.p) spec.p = lab::Schedule::constant(*o.p);
  spec.mean = lab::Schedule::constant(o.mu);
  spec.sd = lab::Schedule::constant(o.sigma);
  return spec.at(o.n);
}

SymmetricMatrix sample_matrix(const SampleOptions& o, const EntryLaw& law) {
  auto a = sample_adjacency({o.n, law, o.seed, o.trial});
  return o.matrix == "laplacian" ? build_laplacian(a) : a;
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty()) {
    std::cout << text;
  } else {
    lab::write_text(out, text);
  }
}

std::string number(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

int run_replay(const std::string& path) {
  const auto report = lab::replay_file(path);
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
  if (report.identical) {
    std::cout << "replay identical: " << report.replayed.rows.size() << " per-trial values match bit for bit\n";
    return 0;
  }
  const auto& d = *report.first_divergence;
  std::cout << "replay diverged at n = " << d.n << ", trial = " << d.trial << ", statistic = " << d.statistic
            << " (" << d.detail << "): recorded " << number(d.recorded) << ", replayed " << number(d.replayed)
            << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rmlab: random-matrix spectral laboratory"};
  app.require_subcommand(1);

  SampleOptions so;

  auto* sample = app.add_subcommand("sample", "emit a sampled matrix as CSV");
  add_sample_flags(sample, so, true);

  auto* eig = app.add_subcommand("eig", "emit the spectrum, largest first, one value per line");
  add_sample_flags(eig, so, true);

  std::string normalize = "auto";
  int bins = 50;
  auto* esd = app.add_subcommand("esd", "emit a histogram CSV of the (normalized) ESD");
  add_sample_flags(esd, so, true);
  esd->add_option("--normalize", normalize, "auto, raw, adjacency, laplacian or dilute")
      ->check(CLI::IsMember({"auto", "raw", "adjacency", "laplacian", "dilute"}))
      ->capture_default_str();
  esd->add_option("--bins", bins, "number of bins (at least 10)")->capture_default_str();

  std::string limit_law = "gamma_m";
  bool limit_moments = false;
  GridSpec grid;
  std::string limit_out;
  auto* limit = app.add_subcommand("limit", "emit a semicircle or gamma_M density grid as CSV");
  limit->add_option("--law", limit_law, "semicircle or gamma_m")
      ->check(CLI::IsMember({"semicircle", "gamma_m"}))
      ->capture_default_str();
  limit->add_option("--x-min", grid.x_min)->capture_default_str();
  limit->add_option("--x-max", grid.x_max)->capture_default_str();
  limit->add_option("--step", grid.step)->capture_default_str();
  limit->add_option("--out", limit_out, "output file (stdout when omitted)");
  limit->add_flag("--moments", limit_moments, "print grid moments against the free-cumulant moments instead");

  int power = 4;
  std::size_t oracle_trials = 0;
  auto* oracle = app.add_subcommand("oracle", "expected tr(L^r) from the circuit expansion");
  oracle->add_option("--n", so.n, "vertices (2..6)")->required();
  oracle->add_option("--r", power, "power (1..6)")->capture_default_str();
  add_law_flags(oracle, so);
  oracle->add_option("--seed", so.seed, "master seed for --trials")->capture_default_str();
  oracle->add_option("--trials", oracle_trials, "also report a Monte Carlo mean over this many matrices");

  std::string config_path, exp_out;
  std::optional<std::size_t> exp_trials;
  std::optional<std::uint64_t> exp_seed;
  std::optional<unsigned> exp_threads;
  auto* exp = app.add_subcommand("exp", "run an experiment from a JSON config and write its record");
  exp->add_option("--config", config_path, "experiment config (JSON)")->required();
  exp->add_option("--out", exp_out, "record path (default: <output_dir>/<name>.json)");
  exp->add_option("--trials", exp_trials, "override the config's trial count");
  exp->add_option("--seed", exp_seed, "override the config's master seed");
  exp->add_option("--threads", exp_threads, "worker threads per cell (0 = hardware)");
  exp->footer(lab::experiment_help());

  std::string record_path;
  auto* rep = app.add_subcommand("replay", "re-run a record's config and compare every per-trial value");
  rep->add_option("record", record_path, "record written by exp")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*sample) {
      const auto m = sample_matrix(so, law_from(so));
      std::ostringstream os;
      os.precision(17);
      for (std::size_t i = 0; i < m.n(); ++i) {
        for (std::size_t j = 0; j < m.n(); ++j) os << (j ? "," : "") << m(i, j) + 0.0;
        os << "\n";
      }
      emit(so.out, os.str());
    } else if (*eig) {
      const auto law = law_from(so);
      const auto s = eigenvalues_sym(sample_matrix(so, law), so.matrix == "laplacian" ? SpectrumSource::Laplacian
                                                                                      : SpectrumSource::Adjacency);
      std::string text;
      for (double v : s.eigenvalues) text += number(v) + "\n";
      emit(so.out, text);
    } else if (*esd) {
      const auto law = law_from(so);
      const bool lap = so.matrix == "laplacian";
      const auto s = eigenvalues_sym(sample_matrix(so, law), lap ? SpectrumSource::Laplacian : SpectrumSource::Adjacency);
      if (normalize == "auto") normalize = lap ? "laplacian" : "adjacency";
      Esd e;
      if (normalize == "raw") {
        e = raw_esd(s);
      } else if (normalize == "laplacian") {
        e = normalize_laplacian_spectrum(s, so.n, law.mean(), law.sd());
      } else if (normalize == "adjacency") {
        e = normalize_adjacency_spectrum(s, so.n, law.mean(), law.sd());
      } else {
        e = normalize_dilute_adjacency(s, so.n, law.mean());
      }
      emit(so.out, lab::histogram_csv(e, bins));
    } else if (*limit) {
      const auto g = limit_law == "semicircle" ? semicircle_density(grid) : gamma_m_density(grid);
      if (limit_moments) {
        const auto ref = limit_law == "semicircle" ? semicircle_moments(6) : gamma_m_moments(6);
        std::printf("k  grid_moment  exact_moment\n");
        for (int k = 2; k <= 6; k += 2) std::printf("%d  %.6f  %.6f\n", k, g.moment(k), ref[k]);
        std::printf("mass  %.6f\n", g.mass());
        if (limit_law == "gamma_m") {
          std::printf("m4/m2^2  grid %.6f  free cumulants %.6f  paper 8/3 = %.6f\n",
                      g.moment(4) / (g.moment(2) * g.moment(2)), ref[4] / (ref[2] * ref[2]), 8.0 / 3.0);
        }
      } else {
        emit(limit_out, lab::grid_csv(g));
      }
    } else if (*oracle) {
      const auto law = law_from(so);
      const auto res = expected_trace_moment(static_cast<int>(so.n), power, EdgeMomentProfile::from_law(law, power));
      std::printf("n %zu\nr %d\ncircuits %llu\nvertex_matched %llu\nexpected_trace_moment %s\n", so.n, power,
                  static_cast<unsigned long long>(res.circuits), static_cast<unsigned long long>(res.vertex_matched),
                  res.exact ? std::to_string(*res.exact).c_str() : number(res.value).c_str());
      if (oracle_trials > 0) {
        double sum = 0.0, sum2 = 0.0;
        for (std::size_t t = 0; t < oracle_trials; ++t) {
          const auto l = build_laplacian(sample_adjacency({so.n, law, so.seed, t}));
          const auto d = l.to_dense();
          std::vector<double> p(d), tmp(d.size());
          for (int step = 1; step < power; ++step) {
            std::fill(tmp.begin(), tmp.end(), 0.0);
            for (std::size_t i = 0; i < so.n; ++i)
              for (std::size_t k = 0; k < so.n; ++k)
                for (std::size_t j = 0; j < so.n; ++j) tmp[i * so.n + j] += p[i * so.n + k] * d[k * so.n + j];
            p.swap(tmp);
          }
          double tr = 0.0;
          for (std::size_t i = 0; i < so.n; ++i) tr += p[i * so.n + i];
          sum += tr;
          sum2 += tr * tr;
        }
        const double k = static_cast<double>(oracle_trials);
        const double mean = sum / k;
        std::printf("monte_carlo_mean %.6f\nstandard_error %.6f\n", mean,
                    std::sqrt(std::max(0.0, sum2 / k - mean * mean) / k));
      }
    } else if (*exp) {
      auto config = lab::config_from_json(lab::read_json(config_path));
      if (exp_trials) config.trials = *exp_trials;
      if (exp_seed) config.master_seed = *exp_seed;
      if (exp_threads) config.threads = *exp_threads;
      const auto record = lab::run_experiment(config);
      if (exp_out.empty()) exp_out = config.output_dir + "/" + std::string(lab::to_string(config.name)) + ".json";
      lab::write_json(exp_out, lab::to_json(record));
      std::printf("%-6s %-24s %6s %12s %12s %12s\n", "n", "statistic", "count", "median", "mean", "iqr");
      for (const auto& s : record.summary) {
        std::printf("%-6zu %-24s %6zu %12.6f %12.6f %12.6f\n", s.n, s.statistic.c_str(), s.count, s.median, s.mean,
                    s.q3 - s.q1);
      }
      for (const auto& f : record.flags) {
        std::printf("flag %s%s: %s\n", f.code.c_str(), f.n ? (" (n = " + std::to_string(*f.n) + ")").c_str() : "",
                    f.message.c_str());
      }
      std::printf("record written to %s (%.2f s)\n", exp_out.c_str(), record.wall_time_seconds);
    } else if (*rep) {
      return run_replay(record_path);
    }
  } catch (const Error& e) {
    std::cerr << "rmlab: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return exit_code(e.kind());
  }
  return 0;
}
