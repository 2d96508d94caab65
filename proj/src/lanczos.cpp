#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "rmlab/error.hpp"
#include "rmlab/rng.hpp"
#include "rmlab/spectra.hpp"

namespace rmlab {

namespace {

constexpr std::uint64_t kStartSeed = 0x5EED1A2C05ULL;

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

// Orthogonalizes w against the first `count` basis vectors, twice.
void reorthogonalize(std::vector<double>& w, const std::vector<double>& basis,
                     std::size_t count, std::size_t n) {
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t q = 0; q < count; ++q) {
      std::span<const double> vq(basis.data() + q * n, n);
      const double c = dot(vq, w);
      for (std::size_t i = 0; i < n; ++i) w[i] -= c * vq[i];
    }
  }
}

double norm(std::span<const double> x) { return std::sqrt(dot(x, x)); }

bool same_values(const std::vector<double>& a, const std::vector<double>& b, double tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) > tol) return false;
  }
  return true;
}

struct RitzCheck {
  std::vector<double> values;  // descending
  bool converged = false;
};

RitzCheck top_ritz(const std::vector<double>& alpha, const std::vector<double>& beta,
                   double last_beta, std::size_t k, double tol) {
  const std::size_t m = alpha.size();
  std::vector<double> d(alpha);
  std::vector<double> e(beta);
  std::vector<double> z(m * m, 0.0);
  for (std::size_t i = 0; i < m; ++i) z[i * m + i] = 1.0;
  tridiagonal_ql(d, e, &z);

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return d[a] > d[b]; });

  RitzCheck out;
  out.converged = m >= k;
  for (std::size_t r = 0; r < std::min(k, m); ++r) {
    const std::size_t j = order[r];
    out.values.push_back(d[j]);
    // Residual of the Ritz pair: |beta_m| times the last component of s_j.
    if (std::abs(last_beta * z[(m - 1) * m + j]) > tol) out.converged = false;
  }
  return out;
}

}  // namespace

std::vector<double> lambda_max_fast(const SymmetricMatrix& m, std::size_t k,
                                    const LanczosOptions& options, LanczosReport* report) {
  const std::size_t n = m.n();
  if (k < 1 || k > n) raise(ErrorKind::Dimension, "lambda_max_fast: need 1 <= k <= n");
  if (!m.all_finite()) raise(ErrorKind::Numeric, "lambda_max_fast: non-finite matrix entry");

  LanczosReport local;
  LanczosReport& rep = report != nullptr ? *report : local;
  rep = {};

  const double frob = std::sqrt(m.frobenius_squared());
  if (frob == 0.0) {
    rep.converged = true;
    return std::vector<double>(k, 0.0);
  }
  const double tol = options.tolerance * frob;
  const double breakdown = 1e-12 * frob;
  const std::size_t max_iter = std::min(options.max_iterations, n);

  Xoshiro256pp rng(kStartSeed);
  auto random_unit = [&](std::vector<double>& v, std::size_t count,
                         const std::vector<double>& basis) {
    for (auto& x : v) x = rng.uniform() - 0.5;
    reorthogonalize(v, basis, count, n);
    const double s = norm(v);
    for (auto& x : v) x /= s;
  };

  std::vector<double> basis;
  basis.reserve(max_iter * n);
  std::vector<double> alpha, beta;
  std::vector<double> v(n), w(n);
  random_unit(v, 0, basis);

  RitzCheck ritz;
  std::vector<double> last_invariant_top;
  for (std::size_t j = 0; j < max_iter; ++j) {
    basis.insert(basis.end(), v.begin(), v.end());
    m.multiply(v, w);
    const double a = dot(w, v);
    alpha.push_back(a);
    reorthogonalize(w, basis, j + 1, n);
    double b = norm(w);
    rep.iterations = j + 1;

    const bool exhausted = j + 1 == n;
    const bool invariant = b <= breakdown;
    if (invariant) b = 0.0;
    const bool check = exhausted || invariant || (j + 1 >= k && (j + 1) % options.check_every == 0) ||
                       j + 1 == max_iter;
    if (check && j + 1 >= k) {
      ritz = top_ritz(alpha, beta, b, k, tol);
      if (exhausted) {
        rep.converged = true;
        return ritz.values;
      }
      if (ritz.converged && !invariant) {
        rep.converged = true;
        return ritz.values;
      }
      // After a breakdown the basis is restarted, because a Krylov space
      // never sees more than one copy of a repeated eigenvalue. Accept once
      // a restart leaves the top k unchanged.
      if (ritz.converged && invariant) {
        if (same_values(ritz.values, last_invariant_top, tol)) {
          rep.converged = true;
          return ritz.values;
        }
        last_invariant_top = ritz.values;
      }
    }
    if (exhausted) break;
    beta.push_back(b);
    if (invariant) {
      ++rep.restarts;
      random_unit(v, j + 1, basis);
    } else {
      for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / b;
    }
  }

  rep.dense_fallback = true;
  Spectrum dense = eigenvalues_sym(m);
  dense.eigenvalues.resize(k);
  return dense.eigenvalues;
}

}  // namespace rmlab
