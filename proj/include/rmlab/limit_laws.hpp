#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace rmlab {

// --- Semicircle law on [-2, 2] ----------------------------------------------

double semicircle_pdf(double x);
double semicircle_cdf(double x);
/// Catalan(k/2) for even k, 0 for odd k.
double semicircle_moment(int k);

// --- Moment sequences and free cumulants ------------------------------------

/// Moments m_0..m_K with m_0 = 1.
struct MomentSequence {
  std::vector<double> moments;

  int order() const noexcept { return static_cast<int>(moments.size()) - 1; }
  double operator[](std::size_t k) const { return moments.at(k); }
};

/// m_0 == 1 and every Hankel matrix [m_{i+j}] of even order is positive
/// semidefinite within `tolerance` (relative to its largest entry).
bool is_valid_moment_sequence(const MomentSequence& m, double tolerance = 1e-9);

MomentSequence semicircle_moments(int order);
MomentSequence standard_normal_moments(int order);

/// Free cumulants kappa[1..K]; kappa[0] is unused and set to 0. Inverts
/// m_n = sum over NC(n) of prod kappa_{|B|}. K <= 12.
std::vector<double> moments_to_free_cumulants(const MomentSequence& m);

/// Forward moment-cumulant sum; `kappa[0]` is ignored. K <= 12.
MomentSequence free_cumulants_to_moments(std::span<const double> kappa);

/// Moments of the free convolution of the semicircle and N(0, 1), by
/// adding free cumulants. K <= 12.
MomentSequence gamma_m_moments(int order);

// --- Density grids -----------------------------------------------------------

struct GridSpec {
  double x_min = -8.0;
  double x_max = 8.0;
  double step = 0.01;
};

/// Density and trapezoid CDF sampled on a uniform grid.
struct DensityGrid {
  std::vector<double> x;
  std::vector<double> pdf;
  std::vector<double> cdf;
  double step = 0.0;

  double x_min() const { return x.front(); }
  double x_max() const { return x.back(); }
  /// Linear interpolation; 0 left of the grid and 1 right of it.
  double cdf_at(double value) const;
  double pdf_at(double value) const;
  /// Trapezoid integral of the density.
  double mass() const;
  /// Trapezoid integral of x^k times the density.
  double moment(int k) const;
};

DensityGrid semicircle_density(const GridSpec& spec = {});

/// Physicists' Gauss-Hermite rule: sum w_i f(x_i) ~ integral e^{-x^2} f(x).
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussHermiteRule gauss_hermite(int nodes);

struct GammaMOptions {
  int quadrature_nodes = 201;
  double eta_coarse = 1e-2;
  double eta_fine = 1e-3;
  double damping = 0.5;
  int max_iterations = 10000;
  double tolerance = 1e-13;
};

/// Stieltjes transform s(z) = integral dmu(x) / (x - z) of the free
/// convolution of the semicircle and N(0, 1), Im z > 0, from the
/// subordination equation s = E[1 / (T - z - s)], T ~ N(0, 1). `guess` seeds
/// the damped iteration. Im s stays positive at every iterate or a numeric
/// error is raised.
std::complex<double> gamma_m_stieltjes(std::complex<double> z, std::complex<double> guess,
                                       const GaussHermiteRule& rule,
                                       const GammaMOptions& options = {});

/// Density Im s(E + i eta) / pi evaluated at eta_coarse and eta_fine along
/// the grid (continuation from the left edge), linearly extrapolated to
/// eta = 0 and clipped at zero. The grid must cover [-8, 8].
DensityGrid gamma_m_density(const GridSpec& spec = {}, const GammaMOptions& options = {});

}  // namespace rmlab
