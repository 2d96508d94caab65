#include "rmlab/limit_laws.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "rmlab/error.hpp"
#include "rmlab/noncrossing.hpp"
#include "rmlab/spectra.hpp"
#include "rmlab/symmetric_matrix.hpp"

namespace rmlab {

using std::numbers::pi;

double semicircle_pdf(double x) {
  if (std::abs(x) >= 2.0) return 0.0;
  return std::sqrt(4.0 - x * x) / (2.0 * pi);
}

double semicircle_cdf(double x) {
  if (x <= -2.0) return 0.0;
  if (x >= 2.0) return 1.0;
  if (x == 0.0) return 0.5;
  return 0.5 + x * std::sqrt(4.0 - x * x) / (4.0 * pi) + std::asin(x / 2.0) / pi;
}

double semicircle_moment(int k) {
  if (k < 0) raise(ErrorKind::Parameter, "semicircle_moment: negative order");
  if (k % 2 != 0) return 0.0;
  // Catalan(j) = C(2j, j) / (j + 1), built up exactly in doubles for j <= 30.
  const int j = k / 2;
  double c = 1.0;
  for (int i = 0; i < j; ++i) c = c * 2.0 * (2.0 * i + 1.0) / (i + 2.0);
  return std::round(c);
}

bool is_valid_moment_sequence(const MomentSequence& m, double tolerance) {
  if (m.moments.empty() || m.moments[0] != 1.0) return false;
  // Hankel matrices [m_{i+j}] of every size that the sequence supports.
  for (std::size_t size = 1; 2 * (size - 1) < m.moments.size(); ++size) {
    SymmetricMatrix h(size);
    double scale = 0.0;
    for (std::size_t i = 0; i < size; ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        h.set(i, j, m.moments[i + j]);
        scale = std::max(scale, std::abs(m.moments[i + j]));
      }
    }
    if (eigenvalues_sym(h).smallest() < -tolerance * std::max(scale, 1.0)) return false;
  }
  return true;
}

MomentSequence semicircle_moments(int order) {
  MomentSequence out;
  for (int k = 0; k <= order; ++k) out.moments.push_back(semicircle_moment(k));
  return out;
}

MomentSequence standard_normal_moments(int order) {
  MomentSequence out;
  for (int k = 0; k <= order; ++k) {
    double m = k % 2 == 0 ? 1.0 : 0.0;
    for (int j = k - 1; j > 1 && k % 2 == 0; j -= 2) m *= j;
    out.moments.push_back(m);
  }
  return out;
}

namespace {

void check_order(int order) {
  if (order > kMaxPartitionOrder) {
    raise(ErrorKind::Size, "moment-cumulant transforms are capped at order 12");
  }
}

double type_product(const std::vector<int>& sizes, std::span<const double> kappa) {
  double p = 1.0;
  for (int s : sizes) p *= kappa[static_cast<std::size_t>(s)];
  return p;
}

}  // namespace

std::vector<double> moments_to_free_cumulants(const MomentSequence& m) {
  const int order = m.order();
  check_order(order);
  std::vector<double> kappa(static_cast<std::size_t>(std::max(order, 0)) + 1, 0.0);
  for (int n = 1; n <= order; ++n) {
    double rest = 0.0;
    for (const auto& [sizes, count] : noncrossing_block_types(n)) {
      if (sizes.size() == 1) continue;  // the one-block partition carries kappa_n
      rest += static_cast<double>(count) * type_product(sizes, kappa);
    }
    kappa[static_cast<std::size_t>(n)] = m.moments[static_cast<std::size_t>(n)] - rest;
  }
  return kappa;
}

MomentSequence free_cumulants_to_moments(std::span<const double> kappa) {
  const int order = static_cast<int>(kappa.size()) - 1;
  check_order(order);
  MomentSequence out;
  out.moments.push_back(1.0);
  for (int n = 1; n <= order; ++n) {
    double m = 0.0;
    for (const auto& [sizes, count] : noncrossing_block_types(n)) {
      m += static_cast<double>(count) * type_product(sizes, kappa);
    }
    out.moments.push_back(m);
  }
  return out;
}

MomentSequence gamma_m_moments(int order) {
  check_order(order);
  const auto k_semi = moments_to_free_cumulants(semicircle_moments(order));
  const auto k_norm = moments_to_free_cumulants(standard_normal_moments(order));
  std::vector<double> sum(k_semi.size());
  for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = k_semi[i] + k_norm[i];
  return free_cumulants_to_moments(sum);
}

// --- grids ------------------------------------------------------------------

double DensityGrid::cdf_at(double value) const {
  if (x.empty() || value < x.front()) return 0.0;
  if (value >= x.back()) return 1.0;
  const auto i = static_cast<std::size_t>((value - x.front()) / step);
  const std::size_t j = std::min(i, x.size() - 2);
  const double t = (value - x[j]) / step;
  return std::clamp(cdf[j] + t * (cdf[j + 1] - cdf[j]), 0.0, 1.0);
}

double DensityGrid::pdf_at(double value) const {
  if (x.empty() || value < x.front() || value > x.back()) return 0.0;
  const auto i = static_cast<std::size_t>((value - x.front()) / step);
  const std::size_t j = std::min(i, x.size() - 2);
  const double t = (value - x[j]) / step;
  return pdf[j] + t * (pdf[j + 1] - pdf[j]);
}

double DensityGrid::mass() const { return moment(0); }

double DensityGrid::moment(int k) const {
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    acc += 0.5 * step * (std::pow(x[i], k) * pdf[i] + std::pow(x[i + 1], k) * pdf[i + 1]);
  }
  return acc;
}

namespace {

std::vector<double> make_axis(const GridSpec& spec) {
  if (!(spec.step > 0.0) || !(spec.x_max > spec.x_min)) {
    raise(ErrorKind::Parameter, "grid needs x_min < x_max and step > 0");
  }
  const auto count = static_cast<std::size_t>(std::llround((spec.x_max - spec.x_min) / spec.step)) + 1;
  std::vector<double> x(count);
  for (std::size_t i = 0; i < count; ++i) x[i] = spec.x_min + static_cast<double>(i) * spec.step;
  return x;
}

void integrate_cdf(DensityGrid& g) {
  g.cdf.assign(g.x.size(), 0.0);
  for (std::size_t i = 1; i < g.x.size(); ++i) {
    g.cdf[i] = g.cdf[i - 1] + 0.5 * g.step * (g.pdf[i - 1] + g.pdf[i]);
  }
  for (auto& c : g.cdf) c = std::clamp(c, 0.0, 1.0);
}

}  // namespace

DensityGrid semicircle_density(const GridSpec& spec) {
  DensityGrid g;
  g.x = make_axis(spec);
  g.step = spec.step;
  for (double v : g.x) {
    g.pdf.push_back(semicircle_pdf(v));
    g.cdf.push_back(semicircle_cdf(v));
  }
  return g;
}

GaussHermiteRule gauss_hermite(int nodes) {
  if (nodes < 1) raise(ErrorKind::Parameter, "Gauss-Hermite rule needs at least one node");
  const auto n = static_cast<std::size_t>(nodes);
  // Golub-Welsch: nodes are the eigenvalues of the Jacobi matrix of the
  // Hermite recurrence, weights sqrt(pi) times squared first components.
  std::vector<double> diag(n, 0.0), off(n > 0 ? n - 1 : 0);
  for (std::size_t k = 0; k + 1 < n; ++k) off[k] = std::sqrt(0.5 * static_cast<double>(k + 1));
  std::vector<double> vectors(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) vectors[i * n + i] = 1.0;
  tridiagonal_ql(diag, off, &vectors);

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return diag[a] < diag[b]; });
  GaussHermiteRule rule;
  const double root_pi = std::sqrt(pi);
  for (std::size_t j : order) {
    rule.nodes.push_back(diag[j]);
    rule.weights.push_back(root_pi * vectors[j] * vectors[j]);
  }
  // Exact symmetry of the rule.
  for (std::size_t i = 0; i < n / 2; ++i) {
    const double x = 0.5 * (rule.nodes[n - 1 - i] - rule.nodes[i]);
    const double w = 0.5 * (rule.weights[n - 1 - i] + rule.weights[i]);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

std::complex<double> gamma_m_stieltjes(std::complex<double> z, std::complex<double> guess,
                                       const GaussHermiteRule& rule,
                                       const GammaMOptions& options) {
  if (!(z.imag() > 0.0)) raise(ErrorKind::Parameter, "Stieltjes transform needs Im z > 0");
  const double inv_sqrt_pi = 1.0 / std::sqrt(pi);
  auto normal_stieltjes = [&](std::complex<double> w) {
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      acc += rule.weights[i] / (std::numbers::sqrt2 * rule.nodes[i] - w);
    }
    return acc * inv_sqrt_pi;
  };

  std::complex<double> s = guess;
  if (!(s.imag() > 0.0)) s = -1.0 / z;
  for (int it = 0; it < options.max_iterations; ++it) {
    const std::complex<double> update = normal_stieltjes(z + s);
    const std::complex<double> next = (1.0 - options.damping) * s + options.damping * update;
    if (!(next.imag() > 0.0)) {
      std::ostringstream os;
      os << "Herglotz invariant violated at z = " << z << ", iterate " << it << ", s = " << next;
      raise(ErrorKind::Numeric, os.str());
    }
    const double change = std::abs(next - s);
    s = next;
    if (change <= options.tolerance * (1.0 + std::abs(s))) return s;
  }
  std::ostringstream os;
  os << "subordination fixed point did not converge in " << options.max_iterations
     << " iterations at z = " << z << " (last iterate " << s << ")";
  raise(ErrorKind::Numeric, os.str());
}

DensityGrid gamma_m_density(const GridSpec& spec, const GammaMOptions& options) {
  if (spec.x_min > -8.0 || spec.x_max < 8.0) {
    raise(ErrorKind::Parameter, "gamma_M grid must cover [-8, 8]");
  }
  DensityGrid g;
  g.x = make_axis(spec);
  g.step = spec.step;
  const GaussHermiteRule rule = gauss_hermite(options.quadrature_nodes);

  auto sweep = [&](double eta) {
    std::vector<double> density(g.x.size());
    std::complex<double> s = -1.0 / std::complex<double>(g.x.front(), eta);
    for (std::size_t i = 0; i < g.x.size(); ++i) {
      s = gamma_m_stieltjes({g.x[i], eta}, s, rule, options);
      density[i] = s.imag() / pi;
    }
    return density;
  };
  const auto coarse = sweep(options.eta_coarse);
  const auto fine = sweep(options.eta_fine);
  const double slope_factor = options.eta_fine / (options.eta_coarse - options.eta_fine);
  g.pdf.resize(g.x.size());
  for (std::size_t i = 0; i < g.x.size(); ++i) {
    g.pdf[i] = std::max(0.0, fine[i] + (fine[i] - coarse[i]) * slope_factor);
  }
  integrate_cdf(g);
  return g;
}

}  // namespace rmlab
