#pragma once

#include <functional>
#include <optional>
#include <utility>

#include <json.hpp>

#include "rmlab/limit_laws.hpp"
#include "rmlab/spectra.hpp"
#include "rmlab/symmetric_matrix.hpp"

namespace rmlab {

using CdfFunction = std::function<double(double)>;

/// Kolmogorov distance sup_x |F_esd(x) - cdf(x)|, evaluated on both sides
/// of every jump of the ESD. Exact for any nondecreasing `cdf` that is
/// continuous between the atoms.
double ks_distance(const Esd& esd, const CdfFunction& cdf);

struct Window {
  double lo = -10.0;
  double hi = 10.0;
};

/// Integral of |F_esd - F_law| over the window; the law's CDF is the grid's
/// piecewise-linear interpolant, so the integral is exact for it. Any ESD
/// point outside the window is a coverage error.
double w1_distance(const Esd& esd, const DensityGrid& law, Window window = {});

/// First Wasserstein distance between two discrete measures.
double w1_distance(const Esd& a, const Esd& b);

/// sqrt((1/n) tr((A - B)^2)), which bounds d_BL between the spectral
/// measures of A and B from above.
double trace_distance_bound(const SymmetricMatrix& a, const SymmetricMatrix& b);

struct DblBound {
  double w1 = 0.0;
  std::optional<double> trace_bound;

  /// The tightest available upper bound on d_BL.
  double value() const { return trace_bound ? std::min(w1, *trace_bound) : w1; }
};

/// Upper bound on d_BL(esd, law). Supplying the matrix pair adds the trace
/// bound for their two spectral measures. Not an exact d_BL.
DblBound dbl_upper_bound(const Esd& esd, const DensityGrid& law, Window window = {},
                         const std::pair<const SymmetricMatrix*, const SymmetricMatrix*>& matrices = {});

/// m_k = (1/n) sum x_i^k over the ESD support, k = 0..order, order <= 8.
MomentSequence empirical_moments(const Esd& esd, int order);

struct RowSumStatistics {
  double s1 = 0.0;  // sum_{i != j} xi_ij^2
  double s2 = 0.0;  // sum_i (sum_{j != i} xi_ij)^2
};

RowSumStatistics row_sum_statistics(const SymmetricMatrix& adjacency);

/// E S1 and E S2 for i.i.d. entries with the given mean and variance.
RowSumStatistics expected_row_sum_statistics(std::size_t n, double mean, double variance);

struct DistanceReport {
  double ks = 0.0;
  double w1 = 0.0;
  Window window;
  MomentSequence moments;  // m_0..m_6
};

DistanceReport distance_report(const Esd& esd, const DensityGrid& law, Window window = {});

nlohmann::json to_json(const DistanceReport& report);

}  // namespace rmlab
