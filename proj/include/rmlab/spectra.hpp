#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rmlab/symmetric_matrix.hpp"

namespace rmlab {

enum class SpectrumSource { Adjacency, Laplacian, Other };

/// Eigenvalues sorted descending: eigenvalues[0] is lambda_1 (the largest).
struct Spectrum {
  std::vector<double> eigenvalues;
  SpectrumSource source = SpectrumSource::Other;

  std::size_t n() const noexcept { return eigenvalues.size(); }
  double largest() const { return eigenvalues.front(); }
  double smallest() const { return eigenvalues.back(); }
  /// lambda_k, 1-based as in lambda_1 >= lambda_2 >= ...
  double kth_largest(std::size_t k) const;
  /// max(lambda_1, -lambda_n).
  double spectral_norm() const;
};

/// Affine map applied to eigenvalues: (lambda - shift) / scale.
struct Normalization {
  double shift = 0.0;
  double scale = 1.0;
};

/// Empirical spectral distribution F(x) = #{x_i <= x} / n over the
/// normalized eigenvalues.
class Esd {
 public:
  Esd() = default;
  /// Normalizes raw eigenvalues; scale must be positive.
  Esd(std::span<const double> raw, Normalization normalization);

  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  /// Normalized values, ascending.
  std::span<const double> support() const noexcept { return points_; }
  const Normalization& normalization() const noexcept { return normalization_; }

  /// Right-continuous F(x).
  double cdf(double x) const;
  /// Left limit F(x-).
  double cdf_left(double x) const;

  struct Atom {
    double x;
    std::size_t multiplicity;
  };
  /// Groups consecutive support points closer than `tolerance`.
  std::vector<Atom> atoms(double tolerance = 0.0) const;

 private:
  std::vector<double> points_;
  Normalization normalization_;
};

/// Householder tridiagonalization followed by implicit-shift QL.
/// Throws a numeric error on non-finite entries or QL non-convergence.
Spectrum eigenvalues_sym(const SymmetricMatrix& m,
                         SpectrumSource source = SpectrumSource::Other);

/// Eigen-decomposition of a symmetric tridiagonal matrix in place.
/// `diag` (size n) receives the eigenvalues, unsorted. `offdiag` has size
/// n - 1 (coupling i and i+1) and is destroyed. When `vectors` is non-null
/// it must be n*n row-major; on entry the identity (or any basis), on exit
/// column j is the eigenvector for diag[j].
void tridiagonal_ql(std::vector<double>& diag, std::vector<double>& offdiag,
                    std::vector<double>* vectors = nullptr);

struct LanczosOptions {
  std::size_t max_iterations = 200;
  /// Ritz residual bound |beta_m s_mi| relative to ||M||_F.
  double tolerance = 1e-10;
  std::size_t check_every = 4;
};

struct LanczosReport {
  std::size_t iterations = 0;
  std::size_t restarts = 0;
  bool converged = false;
  bool dense_fallback = false;
};

/// The k largest eigenvalues, descending. Lanczos with full
/// reorthogonalization; falls back to the dense solver when the top-k
/// Ritz pairs do not converge within the iteration cap.
std::vector<double> lambda_max_fast(const SymmetricMatrix& m, std::size_t k,
                                    const LanczosOptions& options = {},
                                    LanczosReport* report = nullptr);

/// ESD of (lambda_i - n*mu) / (sqrt(n)*sigma) for a Laplacian spectrum.
Esd normalize_laplacian_spectrum(const Spectrum& s, std::size_t n, double mu, double sigma);

/// ESD of (lambda_i + mu) / (sqrt(n)*sigma) for an adjacency spectrum. The
/// shift is +mu: A + mu I = sigma V + mu J.
Esd normalize_adjacency_spectrum(const Spectrum& s, std::size_t n, double mu, double sigma);

/// ESD of lambda_i / sqrt(n p (1 - p)) for an Erdos-Renyi adjacency spectrum.
Esd normalize_dilute_adjacency(const Spectrum& s, std::size_t n, double p);

/// ESD of the raw eigenvalues (identity normalization).
Esd raw_esd(const Spectrum& s);

}  // namespace rmlab
