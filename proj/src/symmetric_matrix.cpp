#include "rmlab/symmetric_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rmlab/error.hpp"

namespace rmlab {

SymmetricMatrix::SymmetricMatrix(std::size_t n, bool zero_diagonal)
    : n_(n), zero_diagonal_(zero_diagonal), data_(n * (n + 1) / 2, 0.0) {}

void SymmetricMatrix::set(std::size_t i, std::size_t j, double value) {
  if (i >= n_ || j >= n_) {
    raise(ErrorKind::Dimension, "matrix index out of range");
  }
  if (i == j && zero_diagonal_ && value != 0.0) {
    raise(ErrorKind::Contract, "nonzero diagonal write on an adjacency matrix at " +
                                   std::to_string(i));
  }
  if (i >= j) {
    data_[index(i, j)] = value;
  } else {
    data_[index(j, i)] = value;
  }
}

std::vector<double> SymmetricMatrix::to_dense() const {
  std::vector<double> dense(n_ * n_);
  for (std::size_t i = 0; i < n_; ++i) {
    const double* row = data_.data() + index(i, 0);
    for (std::size_t j = 0; j <= i; ++j) {
      dense[i * n_ + j] = row[j];
      dense[j * n_ + i] = row[j];
    }
  }
  return dense;
}

void SymmetricMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  if (x.size() != n_ || y.size() != n_) {
    raise(ErrorKind::Dimension, "matrix-vector size mismatch");
  }
  std::fill(y.begin(), y.end(), 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    const double* row = data_.data() + index(i, 0);
    const double xi = x[i];
    double acc = row[i] * xi;
    for (std::size_t j = 0; j < i; ++j) {
      acc += row[j] * x[j];
      y[j] += row[j] * xi;
    }
    y[i] += acc;
  }
}

double SymmetricMatrix::trace() const noexcept {
  double t = 0.0;
  for (std::size_t i = 0; i < n_; ++i) t += data_[index(i, i)];
  return t;
}

double SymmetricMatrix::frobenius_squared() const noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    const double* row = data_.data() + index(i, 0);
    for (std::size_t j = 0; j < i; ++j) s += 2.0 * row[j] * row[j];
    s += row[i] * row[i];
  }
  return s;
}

double SymmetricMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

std::vector<double> SymmetricMatrix::row_sums() const {
  std::vector<double> sums(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    const double* row = data_.data() + index(i, 0);
    for (std::size_t j = 0; j < i; ++j) {
      sums[i] += row[j];
      sums[j] += row[j];
    }
    sums[i] += row[i];
  }
  return sums;
}

bool SymmetricMatrix::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

SymmetricMatrix SymmetricMatrix::shifted(double c) const {
  SymmetricMatrix out = *this;
  out.zero_diagonal_ = false;
  for (std::size_t i = 0; i < n_; ++i) out.data_[index(i, i)] += c;
  return out;
}

}  // namespace rmlab
