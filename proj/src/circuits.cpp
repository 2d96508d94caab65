#include "rmlab/circuits.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "rmlab/error.hpp"

namespace rmlab {

bool adjacent(const Edge& a, const Edge& b) noexcept {
  return a.plus == b.plus || a.plus == b.minus || a.minus == b.plus || a.minus == b.minus;
}

std::vector<Edge> edges_of(int n) {
  std::vector<Edge> out;
  for (int plus = 2; plus <= n; ++plus) {
    for (int minus = 1; minus < plus; ++minus) out.push_back({plus, minus});
  }
  return out;
}

int t_value(const Edge& a, const Edge& b) noexcept {
  if (a == b) return -2;
  if (a.minus == b.minus || a.plus == b.plus) return -1;
  if (a.minus == b.plus || a.plus == b.minus) return 1;
  return 0;
}

std::int64_t IntMatrix::trace() const {
  std::int64_t t = 0;
  for (std::size_t i = 0; i < n; ++i) t += (*this)(i, i);
  return t;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.n != b.n) raise(ErrorKind::Dimension, "integer matrix size mismatch");
  IntMatrix c(a.n);
  for (std::size_t i = 0; i < a.n; ++i) {
    for (std::size_t k = 0; k < a.n; ++k) {
      const std::int64_t aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < a.n; ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

IntMatrix operator*(std::int64_t c, const IntMatrix& a) {
  IntMatrix out(a);
  for (auto& v : out.data) v *= c;
  return out;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.n != b.n) raise(ErrorKind::Dimension, "integer matrix size mismatch");
  IntMatrix out(a);
  for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] += b.data[i];
  return out;
}

IntMatrix q_matrix(const Edge& a, const Edge& b, int n) {
  for (const Edge& e : {a, b}) {
    if (!(1 <= e.minus && e.minus < e.plus && e.plus <= n)) {
      raise(ErrorKind::Contract, "edge outside the vertex range");
    }
  }
  IntMatrix q(static_cast<std::size_t>(n));
  auto at = [&](int i, int j) -> std::int64_t& {
    return q(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1));
  };
  at(a.plus, b.plus) = -1;
  at(a.minus, b.minus) = -1;
  at(a.plus, b.minus) = 1;
  at(a.minus, b.plus) = 1;
  return q;
}

namespace {

std::map<Edge, int> multiplicities(const Circuit& c) {
  std::map<Edge, int> counts;
  for (const Edge& e : c.edges) ++counts[e];
  return counts;
}

void check_caps(int n, int r) {
  if (n < 2 || r < 1) raise(ErrorKind::Dimension, "circuits need n >= 2 and r >= 1");
  if (n > kMaxCircuitVertices || r > kMaxCircuitLength) {
    raise(ErrorKind::Size, "circuit enumeration is capped at n <= 6, r <= 6");
  }
}

}  // namespace

bool is_vertex_matched(const Circuit& c) {
  const auto counts = multiplicities(c);
  return std::all_of(counts.begin(), counts.end(), [](const auto& kv) { return kv.second >= 2; });
}

bool has_order3_match(const Circuit& c) {
  const auto counts = multiplicities(c);
  return std::any_of(counts.begin(), counts.end(), [](const auto& kv) { return kv.second >= 3; });
}

void for_each_circuit(int n, int r, const std::function<void(const Circuit&)>& visit) {
  check_caps(n, r);
  const std::vector<Edge> edges = edges_of(n);
  Circuit current;
  current.edges.reserve(static_cast<std::size_t>(r));

  std::function<void()> extend = [&] {
    if (current.edges.size() == static_cast<std::size_t>(r)) {
      if (adjacent(current.edges.back(), current.edges.front())) visit(current);
      return;
    }
    for (const Edge& e : edges) {
      if (!current.edges.empty() && !adjacent(current.edges.back(), e)) continue;
      current.edges.push_back(e);
      extend();
      current.edges.pop_back();
    }
  };
  extend();
}

std::vector<Circuit> enumerate_circuits(int n, int r) {
  std::vector<Circuit> out;
  for_each_circuit(n, r, [&](const Circuit& c) { out.push_back(c); });
  return out;
}

EdgeMomentProfile EdgeMomentProfile::from_law(const EntryLaw& law, int max_power) {
  EdgeMomentProfile p;
  for (int m = 0; m <= max_power; ++m) p.moments.push_back(law.raw_moment(m));
  return p;
}

bool EdgeMomentProfile::integral() const {
  return std::all_of(moments.begin(), moments.end(),
                     [](double m) { return std::isfinite(m) && m == std::round(m); });
}

TraceMomentResult expected_trace_moment(int n, int r, const EdgeMomentProfile& profile,
                                        const std::function<bool(const Circuit&)>& include) {
  check_caps(n, r);
  if (profile.moments.size() < static_cast<std::size_t>(r) + 1 || profile.moments[0] != 1.0) {
    raise(ErrorKind::Contract, "moment profile must cover powers 0..r with E[xi^0] = 1");
  }
  const bool exact = profile.integral();
  TraceMomentResult result;
  double sum = 0.0;
  std::int64_t exact_sum = 0;

  for_each_circuit(n, r, [&](const Circuit& c) {
    ++result.circuits;
    if (is_vertex_matched(c)) ++result.vertex_matched;
    if (include && !include(c)) return;
    std::int64_t t_product = 1;
    for (std::size_t j = 0; j < c.edges.size(); ++j) {
      t_product *= t_value(c.edges[j], c.edges[(j + 1) % c.edges.size()]);
    }
    if (t_product == 0) return;
    double moment = 1.0;
    std::int64_t moment_exact = 1;
    for (const auto& [edge, mult] : multiplicities(c)) {
      const double em = profile.moments[static_cast<std::size_t>(mult)];
      moment *= em;
      if (exact) moment_exact *= static_cast<std::int64_t>(em);
    }
    sum += static_cast<double>(t_product) * moment;
    if (exact) exact_sum += t_product * moment_exact;
  });

  const int sign = r % 2 == 0 ? 1 : -1;
  result.value = sign * sum;
  if (exact) {
    result.exact = sign * exact_sum;
    result.value = static_cast<double>(*result.exact);
  }
  return result;
}

}  // namespace rmlab
