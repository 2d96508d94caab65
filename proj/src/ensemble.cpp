#include "rmlab/ensemble.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "rmlab/error.hpp"

namespace rmlab {

namespace {

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    std::ostringstream os;
    os << what << ": probability " << p << " outside [0, 1]";
    raise(ErrorKind::Config, os.str());
  }
}

// E[Z^k] for a standard normal Z.
double normal_moment(int k) {
  if (k % 2 != 0) return 0.0;
  double m = 1.0;
  for (int j = k - 1; j > 1; j -= 2) m *= j;
  return m;
}

double binomial(int n, int k) {
  double c = 1.0;
  for (int j = 1; j <= k; ++j) c = c * (n - k + j) / j;
  return c;
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

EntryLaw EntryLaw::bernoulli(double p) {
  check_probability(p, "Bernoulli");
  return EntryLaw(law::Bernoulli{p}, p, p * (1.0 - p), kUnboundedOrder);
}

EntryLaw EntryLaw::centered_bernoulli(double p) {
  check_probability(p, "CenteredBernoulli");
  return EntryLaw(law::CenteredBernoulli{p}, 0.0, p * (1.0 - p), kUnboundedOrder);
}

EntryLaw EntryLaw::sign_sparse(double p) {
  check_probability(p, "SignSparse");
  return EntryLaw(law::SignSparse{p}, 0.0, p, kUnboundedOrder);
}

EntryLaw EntryLaw::gaussian(double mean, double sd) {
  if (!std::isfinite(mean) || !(sd > 0.0) || !std::isfinite(sd)) {
    raise(ErrorKind::Config, "Gaussian law needs finite mean and sd > 0");
  }
  return EntryLaw(law::Gaussian{mean, sd}, mean, sd * sd, kUnboundedOrder);
}

EntryLaw EntryLaw::rademacher() {
  return EntryLaw(law::Rademacher{}, 0.0, 1.0, kUnboundedOrder);
}

EntryLaw EntryLaw::table(std::vector<double> values, std::vector<double> probs,
                         double certified_moment_order) {
  if (values.size() != probs.size() || values.empty()) {
    raise(ErrorKind::Config, "table law: values and probs must be non-empty and equal length");
  }
  double total = 0.0;
  for (double p : probs) {
    check_probability(p, "table law");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    raise(ErrorKind::Config, "table law: probabilities do not sum to 1");
  }
  if (!(certified_moment_order >= 0.0)) {
    raise(ErrorKind::Config, "table law: certified moment order must be >= 0");
  }
  double mean = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) mean += probs[i] * values[i];
  double var = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    var += probs[i] * (values[i] - mean) * (values[i] - mean);
  }
  return EntryLaw(law::Table{std::move(values), std::move(probs)}, mean, var,
                  certified_moment_order);
}

double EntryLaw::sd() const noexcept { return std::sqrt(variance_); }

std::string EntryLaw::name() const {
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const law::Bernoulli& b) { os << "Bernoulli(" << b.p << ")"; },
                 [&](const law::CenteredBernoulli& b) { os << "CenteredBernoulli(" << b.p << ")"; },
                 [&](const law::SignSparse& s) { os << "SignSparse(" << s.p << ")"; },
                 [&](const law::Gaussian& g) { os << "Gaussian(" << g.mean << ", " << g.sd << ")"; },
                 [&](const law::Rademacher&) { os << "Rademacher"; },
                 [&](const law::Table& t) { os << "Table[" << t.values.size() << "]"; },
             },
             kind_);
  return os.str();
}

double EntryLaw::raw_moment(int m) const {
  if (m < 0) raise(ErrorKind::Parameter, "raw_moment: negative order");
  if (m == 0) return 1.0;
  return std::visit(
      overloaded{
          [&](const law::Bernoulli& b) { return b.p; },
          [&](const law::CenteredBernoulli& b) {
            return b.p * std::pow(1.0 - b.p, m) + (1.0 - b.p) * std::pow(-b.p, m);
          },
          [&](const law::SignSparse& s) { return m % 2 == 0 ? s.p : 0.0; },
          [&](const law::Gaussian& g) {
            double acc = 0.0;
            for (int k = 0; k <= m; k += 2) {
              acc += binomial(m, k) * std::pow(g.mean, m - k) * std::pow(g.sd, k) *
                     normal_moment(k);
            }
            return acc;
          },
          [&](const law::Rademacher&) { return m % 2 == 0 ? 1.0 : 0.0; },
          [&](const law::Table& t) {
            double acc = 0.0;
            for (std::size_t i = 0; i < t.values.size(); ++i) {
              acc += t.probs[i] * std::pow(t.values[i], m);
            }
            return acc;
          },
      },
      kind_);
}

double EntryLaw::standardized_abs_moment(double p) const {
  if (degenerate()) return std::numeric_limits<double>::infinity();
  const double s = sd();
  auto atoms = [&](const std::vector<double>& v, const std::vector<double>& w) {
    double acc = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      acc += w[i] * std::pow(std::abs((v[i] - mean_) / s), p);
    }
    return acc;
  };
  return std::visit(
      overloaded{
          [&](const law::Bernoulli& b) { return atoms({0.0, 1.0}, {1.0 - b.p, b.p}); },
          [&](const law::CenteredBernoulli& b) {
            return atoms({-b.p, 1.0 - b.p}, {1.0 - b.p, b.p});
          },
          [&](const law::SignSparse& q) {
            return atoms({-1.0, 0.0, 1.0}, {q.p / 2, 1.0 - q.p, q.p / 2});
          },
          [&](const law::Gaussian&) {
            // E|Z|^p = 2^{p/2} Gamma((p+1)/2) / sqrt(pi)
            return std::pow(2.0, p / 2) * std::tgamma((p + 1) / 2) / std::sqrt(M_PI);
          },
          [&](const law::Rademacher&) { return 1.0; },
          [&](const law::Table& t) { return atoms(t.values, t.probs); },
      },
      kind_);
}

bool EntryLaw::unit_valued() const noexcept {
  auto unit = [](double v) { return v == 0.0 || v == 1.0 || v == -1.0; };
  return std::visit(overloaded{
                        [](const law::Bernoulli&) { return true; },
                        [](const law::CenteredBernoulli& b) { return b.p == 0.0 || b.p == 1.0; },
                        [](const law::SignSparse&) { return true; },
                        [](const law::Gaussian&) { return false; },
                        [](const law::Rademacher&) { return true; },
                        [&](const law::Table& t) {
                          for (std::size_t i = 0; i < t.values.size(); ++i) {
                            if (t.probs[i] > 0.0 && !unit(t.values[i])) return false;
                          }
                          return true;
                        },
                    },
                    kind_);
}

EntrySampler::EntrySampler(const EntryLaw& law, std::uint64_t seed)
    : law_(law), engine_(seed) {
  if (const auto* t = std::get_if<law::Table>(&law_.kind())) {
    cumulative_.resize(t->probs.size());
    std::partial_sum(t->probs.begin(), t->probs.end(), cumulative_.begin());
  }
}

double EntrySampler::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * engine_.uniform() - 1.0;
    v = 2.0 * engine_.uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double factor = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * factor;
  has_spare_ = true;
  return u * factor;
}

double EntrySampler::operator()() {
  return std::visit(
      overloaded{
          [&](const law::Bernoulli& b) { return engine_.uniform() < b.p ? 1.0 : 0.0; },
          [&](const law::CenteredBernoulli& b) {
            return (engine_.uniform() < b.p ? 1.0 : 0.0) - b.p;
          },
          [&](const law::SignSparse& s) {
            const double u = engine_.uniform();
            if (u < s.p / 2) return 1.0;
            if (u < s.p) return -1.0;
            return 0.0;
          },
          [&](const law::Gaussian& g) { return g.mean + g.sd * gaussian(); },
          [&](const law::Rademacher&) { return (engine_() >> 63) != 0 ? 1.0 : -1.0; },
          [&](const law::Table& t) {
            const double u = engine_.uniform();
            for (std::size_t i = 0; i + 1 < cumulative_.size(); ++i) {
              if (u < cumulative_[i]) return t.values[i];
            }
            return t.values.back();
          },
      },
      law_.kind());
}

std::vector<double> sample_entry_stream(const EntryLaw& law, std::uint64_t seed,
                                        std::size_t count) {
  EntrySampler draw(law, seed);
  std::vector<double> out(count);
  for (auto& x : out) x = draw();
  return out;
}

SymmetricMatrix sample_adjacency(const EnsembleConfig& config) {
  if (config.n < 2) raise(ErrorKind::Dimension, "adjacency needs n >= 2");
  const std::size_t n = config.n;
  SymmetricMatrix a(n, /*zero_diagonal=*/true);
  EntrySampler draw(config.law, config.seed());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) a.set(j, i, draw());
  }
  return a;
}

SymmetricMatrix build_laplacian(const SymmetricMatrix& adjacency) {
  const std::size_t n = adjacency.n();
  for (std::size_t i = 0; i < n; ++i) {
    if (adjacency(i, i) != 0.0) {
      raise(ErrorKind::Contract, "Laplacian input has a nonzero diagonal at row " +
                                     std::to_string(i));
    }
  }
  SymmetricMatrix lap(n);
  const std::vector<double> degree = adjacency.row_sums();
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = adjacency.lower_row(i);
    for (std::size_t j = 0; j < i; ++j) lap.set(i, j, -row[j]);
    lap.set(i, i, degree[i]);
  }
  return lap;
}

bool validate_condition5(const EntryLaw& law, double required_p) {
  if (law.degenerate()) return false;
  if (law.certified_moment_order() < required_p) return false;
  return std::isfinite(law.standardized_abs_moment(required_p));
}

}  // namespace rmlab
