#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "rmlab/error.hpp"
#include "rmlab/spectra.hpp"

namespace rmlab {

namespace {

double dot(const double* a, const double* b, std::size_t len) {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  std::size_t j = 0;
  for (; j + 4 <= len; j += 4) {
    s0 += a[j] * b[j];
    s1 += a[j + 1] * b[j + 1];
    s2 += a[j + 2] * b[j + 2];
    s3 += a[j + 3] * b[j + 3];
  }
  for (; j < len; ++j) s0 += a[j] * b[j];
  return (s0 + s1) + (s2 + s3);
}

// Reduces the symmetric matrix held in the lower triangle of `a`
// (row-major, n x n) to tridiagonal form by Householder reflections.
// Only the lower triangle is read or written.
void tridiagonalize(std::vector<double>& a, std::size_t n, std::vector<double>& diag,
                    std::vector<double>& offdiag) {
  diag.assign(n, 0.0);
  offdiag.assign(n > 0 ? n - 1 : 0, 0.0);
  std::vector<double> v(n), p(n);

  for (std::size_t k = 0; k + 1 < n; ++k) {
    diag[k] = a[k * n + k];
    const std::size_t lo = k + 1;

    const double alpha = a[lo * n + k];
    double tail = 0.0;
    for (std::size_t i = lo + 1; i < n; ++i) tail = std::hypot(tail, a[i * n + k]);
    if (tail == 0.0) {
      offdiag[k] = alpha;
      continue;
    }
    const double beta = alpha >= 0.0 ? -std::hypot(alpha, tail) : std::hypot(alpha, tail);
    const double tau = (beta - alpha) / beta;
    const double inv = 1.0 / (alpha - beta);
    v[lo] = 1.0;
    for (std::size_t i = lo + 1; i < n; ++i) v[i] = a[i * n + k] * inv;
    offdiag[k] = beta;

    // p = tau * A22 v, reading only the lower triangle of A22.
    std::fill(p.begin() + lo, p.end(), 0.0);
    for (std::size_t i = lo; i < n; ++i) {
      const double* row = &a[i * n + lo];
      const std::size_t len = i - lo;
      const double vi = v[i];
      double acc = dot(row, &v[lo], len);
      double* pp = &p[lo];
      for (std::size_t j = 0; j < len; ++j) pp[j] += row[j] * vi;
      p[i] += acc + row[len] * vi;
    }
    double pv = 0.0;
    for (std::size_t i = lo; i < n; ++i) {
      p[i] *= tau;
      pv += p[i] * v[i];
    }
    // w = p - (tau/2)(p.v) v, stored back into p.
    const double half = 0.5 * tau * pv;
    for (std::size_t i = lo; i < n; ++i) p[i] -= half * v[i];

    // A22 -= v w' + w v'
    for (std::size_t i = lo; i < n; ++i) {
      double* row = &a[i * n + lo];
      const double vi = v[i];
      const double wi = p[i];
      const double* vv = &v[lo];
      const double* ww = &p[lo];
      const std::size_t len = i - lo + 1;
      for (std::size_t j = 0; j < len; ++j) row[j] -= vi * ww[j] + wi * vv[j];
    }
  }
  if (n > 0) diag[n - 1] = a[(n - 1) * n + (n - 1)];
}

}  // namespace

void tridiagonal_ql(std::vector<double>& d, std::vector<double>& offdiag,
                    std::vector<double>* z) {
  const std::size_t n = d.size();
  if (n == 0) return;
  if (offdiag.size() + 1 != n) {
    raise(ErrorKind::Dimension, "tridiagonal_ql: off-diagonal must have n - 1 entries");
  }
  std::vector<double> e(offdiag);
  e.push_back(0.0);
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr int kMaxSweeps = 60;

  for (std::size_t l = 0; l < n; ++l) {
    int sweeps = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m == l) break;
      if (++sweeps > kMaxSweeps) {
        raise(ErrorKind::Numeric, "implicit QL did not converge at index " + std::to_string(l));
      }
      // Wilkinson-type shift from the leading 2x2 block.
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      bool underflow = false;
      std::size_t i = m;
      while (i-- > l) {
        const double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        if (z != nullptr) {
          auto& zz = *z;
          for (std::size_t k = 0; k < n; ++k) {
            const double zf = zz[k * n + i + 1];
            zz[k * n + i + 1] = s * zz[k * n + i] + c * zf;
            zz[k * n + i] = c * zz[k * n + i] - s * zf;
          }
        }
      }
      if (underflow) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    } while (m != l);
  }
}

Spectrum eigenvalues_sym(const SymmetricMatrix& m, SpectrumSource source) {
  if (!m.all_finite()) raise(ErrorKind::Numeric, "eigenvalues_sym: non-finite matrix entry");
  const std::size_t n = m.n();
  Spectrum out;
  out.source = source;
  if (n == 0) return out;

  // Lower triangle only; the upper part stays untouched.
  std::vector<double> a(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = m.lower_row(i);
    std::copy(row.begin(), row.end(), a.begin() + static_cast<std::ptrdiff_t>(i * n));
  }
  std::vector<double> diag, offdiag;
  tridiagonalize(a, n, diag, offdiag);
  a.clear();
  a.shrink_to_fit();

  tridiagonal_ql(diag, offdiag);
  std::stable_sort(diag.begin(), diag.end(), std::greater<>());
  out.eigenvalues = std::move(diag);
  return out;
}

}  // namespace rmlab
