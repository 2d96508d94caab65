#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rmlab {

/// Dense real symmetric matrix stored as a packed lower triangle
/// (row i holds columns 0..i). Symmetry holds by construction.
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;
  explicit SymmetricMatrix(std::size_t n, bool zero_diagonal = false);

  std::size_t n() const noexcept { return n_; }
  bool zero_diagonal() const noexcept { return zero_diagonal_; }

  double operator()(std::size_t i, std::size_t j) const noexcept {
    return i >= j ? data_[index(i, j)] : data_[index(j, i)];
  }

  /// Sets M[i][j] and M[j][i]. Writing a nonzero diagonal entry on a
  /// zero-diagonal matrix is a contract error.
  void set(std::size_t i, std::size_t j, double value);

  /// Packed lower-triangle row i, columns 0..i.
  std::span<const double> lower_row(std::size_t i) const noexcept {
    return {data_.data() + index(i, 0), i + 1};
  }
  std::span<const double> packed() const noexcept { return data_; }

  /// Row-major n*n copy with both triangles filled.
  std::vector<double> to_dense() const;

  /// y = M x.
  void multiply(std::span<const double> x, std::span<double> y) const;

  double trace() const noexcept;
  double frobenius_squared() const noexcept;
  double max_abs() const noexcept;
  std::vector<double> row_sums() const;
  bool all_finite() const noexcept;

  /// Adds c to every diagonal entry. Clears the zero-diagonal flag.
  SymmetricMatrix shifted(double c) const;

  friend bool operator==(const SymmetricMatrix&, const SymmetricMatrix&) = default;

 private:
  static std::size_t index(std::size_t i, std::size_t j) noexcept {
    return i * (i + 1) / 2 + j;
  }

  std::size_t n_ = 0;
  bool zero_diagonal_ = false;
  std::vector<double> data_;
};

}  // namespace rmlab
