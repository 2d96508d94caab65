#include "rmlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "rmlab/error.hpp"

namespace rmlab {

double ks_distance(const Esd& esd, const CdfFunction& cdf) {
  double worst = 0.0;
  const double n = static_cast<double>(esd.size());
  std::size_t below = 0;
  for (const auto& atom : esd.atoms()) {
    // The law's left limit is taken one ulp below the atom, which also makes
    // the distance exact when the law itself has a jump there.
    const double g_left = cdf(std::nextafter(atom.x, -std::numeric_limits<double>::infinity()));
    const double g = cdf(atom.x);
    const double left = static_cast<double>(below) / n;
    below += atom.multiplicity;
    const double right = static_cast<double>(below) / n;
    worst = std::max({worst, std::abs(left - g_left), std::abs(right - g)});
  }
  return worst;
}

namespace {

// Integral of |c - L(x)| over [u, v] for L linear with L(u) = lu, L(v) = lv.
double abs_linear_integral(double c, double u, double v, double lu, double lv) {
  const double du = lu - c;
  const double dv = lv - c;
  const double width = v - u;
  if (width <= 0.0) return 0.0;
  if ((du >= 0.0 && dv >= 0.0) || (du <= 0.0 && dv <= 0.0)) {
    return 0.5 * width * (std::abs(du) + std::abs(dv));
  }
  // Sign change inside: split at the root.
  const double t = du / (du - dv);
  return 0.5 * width * (t * std::abs(du) + (1.0 - t) * std::abs(dv));
}

}  // namespace

double w1_distance(const Esd& esd, const DensityGrid& law, Window window) {
  if (!(window.hi > window.lo)) raise(ErrorKind::Parameter, "empty window");
  const auto support = esd.support();
  if (!support.empty() && (support.front() < window.lo || support.back() > window.hi)) {
    std::ostringstream os;
    os << "spectral mass outside the window [" << window.lo << ", " << window.hi
       << "]: support spans [" << support.front() << ", " << support.back() << "]";
    raise(ErrorKind::Coverage, os.str());
  }
  std::vector<double> breaks{window.lo, window.hi};
  for (double x : law.x) {
    if (x > window.lo && x < window.hi) breaks.push_back(x);
  }
  breaks.insert(breaks.end(), support.begin(), support.end());
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  double total = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double u = breaks[i];
    const double v = breaks[i + 1];
    total += abs_linear_integral(esd.cdf(u), u, v, law.cdf_at(u), law.cdf_at(v));
  }
  return total;
}

double w1_distance(const Esd& a, const Esd& b) {
  std::vector<double> breaks(a.support().begin(), a.support().end());
  breaks.insert(breaks.end(), b.support().begin(), b.support().end());
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    total += std::abs(a.cdf(breaks[i]) - b.cdf(breaks[i])) * (breaks[i + 1] - breaks[i]);
  }
  return total;
}

double trace_distance_bound(const SymmetricMatrix& a, const SymmetricMatrix& b) {
  if (a.n() != b.n() || a.n() == 0) raise(ErrorKind::Dimension, "trace bound needs equal sizes");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.n(); ++i) {
    const auto ra = a.lower_row(i);
    const auto rb = b.lower_row(i);
    for (std::size_t j = 0; j < i; ++j) sum += 2.0 * (ra[j] - rb[j]) * (ra[j] - rb[j]);
    sum += (ra[i] - rb[i]) * (ra[i] - rb[i]);
  }
  return std::sqrt(sum / static_cast<double>(a.n()));
}

DblBound dbl_upper_bound(const Esd& esd, const DensityGrid& law, Window window,
                         const std::pair<const SymmetricMatrix*, const SymmetricMatrix*>& matrices) {
  DblBound bound;
  bound.w1 = w1_distance(esd, law, window);
  if (matrices.first != nullptr && matrices.second != nullptr) {
    bound.trace_bound = trace_distance_bound(*matrices.first, *matrices.second);
  }
  return bound;
}

MomentSequence empirical_moments(const Esd& esd, int order) {
  if (order < 0 || order > 8) raise(ErrorKind::Parameter, "empirical moments are limited to order 8");
  MomentSequence out;
  out.moments.assign(static_cast<std::size_t>(order) + 1, 0.0);
  if (esd.empty()) raise(ErrorKind::Contract, "empirical moments of an empty ESD");
  for (double x : esd.support()) {
    double p = 1.0;
    for (int k = 0; k <= order; ++k) {
      out.moments[static_cast<std::size_t>(k)] += p;
      p *= x;
    }
  }
  for (auto& m : out.moments) m /= static_cast<double>(esd.size());
  out.moments[0] = 1.0;
  return out;
}

RowSumStatistics row_sum_statistics(const SymmetricMatrix& adjacency) {
  if (!adjacency.zero_diagonal()) {
    for (std::size_t i = 0; i < adjacency.n(); ++i) {
      if (adjacency(i, i) != 0.0) raise(ErrorKind::Contract, "row-sum statistics need a zero diagonal");
    }
  }
  RowSumStatistics s;
  for (std::size_t i = 0; i < adjacency.n(); ++i) {
    const auto row = adjacency.lower_row(i);
    for (std::size_t j = 0; j < i; ++j) s.s1 += 2.0 * row[j] * row[j];
  }
  for (double r : adjacency.row_sums()) s.s2 += r * r;
  return s;
}

RowSumStatistics expected_row_sum_statistics(std::size_t n, double mean, double variance) {
  const double nd = static_cast<double>(n);
  const double second = variance + mean * mean;
  // Row i: n-1 independent terms, so E(row sum)^2 = (n-1) var + (n-1)^2 mean^2.
  return {nd * (nd - 1.0) * second,
          nd * ((nd - 1.0) * variance + (nd - 1.0) * (nd - 1.0) * mean * mean)};
}

DistanceReport distance_report(const Esd& esd, const DensityGrid& law, Window window) {
  DistanceReport r;
  r.ks = ks_distance(esd, [&](double x) { return law.cdf_at(x); });
  r.w1 = w1_distance(esd, law, window);
  r.window = window;
  r.moments = empirical_moments(esd, 6);
  return r;
}

nlohmann::json to_json(const DistanceReport& report) {
  return {{"ks", report.ks},
          {"w1", report.w1},
          {"moments", report.moments.moments},
          {"window", {report.window.lo, report.window.hi}}};
}

}  // namespace rmlab
