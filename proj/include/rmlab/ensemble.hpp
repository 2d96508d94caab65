#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "rmlab/rng.hpp"
#include "rmlab/symmetric_matrix.hpp"

namespace rmlab {

namespace law {
struct Bernoulli { double p; };
struct CenteredBernoulli { double p; };  // Bernoulli(p) - p
struct SignSparse { double p; };         // P(+1) = P(-1) = p/2, P(0) = 1 - p
struct Gaussian { double mean; double sd; };
struct Rademacher {};
struct Table {
  std::vector<double> values;
  std::vector<double> probs;
};
}  // namespace law

using LawKind = std::variant<law::Bernoulli, law::CenteredBernoulli, law::SignSparse,
                             law::Gaussian, law::Rademacher, law::Table>;

inline constexpr double kUnboundedOrder = std::numeric_limits<double>::infinity();

/// Distribution of one off-diagonal entry. Parametric kinds certify every
/// moment order; a table law carries whatever order the caller declares.
///
/// Degenerate laws (variance 0, e.g. Bernoulli(1)) are constructible so the
/// complete-graph case can be studied, but they never satisfy the moment
/// condition.
class EntryLaw {
 public:
  static EntryLaw bernoulli(double p);
  static EntryLaw centered_bernoulli(double p);
  static EntryLaw sign_sparse(double p);
  static EntryLaw gaussian(double mean, double sd);
  static EntryLaw rademacher();
  static EntryLaw table(std::vector<double> values, std::vector<double> probs,
                        double certified_moment_order = kUnboundedOrder);

  const LawKind& kind() const noexcept { return kind_; }
  std::string name() const;

  double mean() const noexcept { return mean_; }
  double variance() const noexcept { return variance_; }
  double sd() const noexcept;
  double certified_moment_order() const noexcept { return certified_order_; }
  bool degenerate() const noexcept { return variance_ <= 0.0; }

  /// E[xi^m] in closed form (m >= 0).
  double raw_moment(int m) const;

  /// E|(xi - mean)/sd|^p, infinite for degenerate laws.
  double standardized_abs_moment(double p) const;

  /// True when every atom is in {-1, 0, 1}: trace moments are then integers.
  bool unit_valued() const noexcept;

 private:
  EntryLaw(LawKind kind, double mean, double variance, double order)
      : kind_(std::move(kind)), mean_(mean), variance_(variance), certified_order_(order) {}

  LawKind kind_;
  double mean_ = 0.0;
  double variance_ = 0.0;
  double certified_order_ = kUnboundedOrder;
};

/// Draws i.i.d. entries from a law on one xoshiro256++ stream.
/// Gaussians use the Marsaglia polar method and keep the spare variate.
class EntrySampler {
 public:
  EntrySampler(const EntryLaw& law, std::uint64_t seed);

  double operator()();

 private:
  double gaussian();

  EntryLaw law_;
  Xoshiro256pp engine_;
  std::vector<double> cumulative_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

std::vector<double> sample_entry_stream(const EntryLaw& law, std::uint64_t seed,
                                        std::size_t count);

struct EnsembleConfig {
  std::size_t n = 2;
  EntryLaw law = EntryLaw::rademacher();
  std::uint64_t master_seed = 0;
  std::uint64_t trial_index = 0;

  std::uint64_t seed() const noexcept { return derive_trial_seed(master_seed, trial_index); }
};

/// Zero-diagonal adjacency matrix. Upper-triangle entries are drawn in
/// row-major order (i < j) and mirrored.
SymmetricMatrix sample_adjacency(const EnsembleConfig& config);

/// D - A, where D holds the row sums of A.
SymmetricMatrix build_laplacian(const SymmetricMatrix& adjacency);

/// True iff the law certifies moment order >= required_p and its
/// standardized absolute moment of that order is finite.
bool validate_condition5(const EntryLaw& law, double required_p);

}  // namespace rmlab
