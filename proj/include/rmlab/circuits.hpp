#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "rmlab/ensemble.hpp"

namespace rmlab {

inline constexpr int kMaxCircuitVertices = 6;
inline constexpr int kMaxCircuitLength = 6;

/// Edge (plus, minus) of the complete graph on vertices 1..n, plus > minus.
struct Edge {
  int plus = 2;
  int minus = 1;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Edges share at least one vertex. Every edge is adjacent to itself.
bool adjacent(const Edge& a, const Edge& b) noexcept;

/// All n(n-1)/2 edges ordered by (plus, minus).
std::vector<Edge> edges_of(int n);

/// tr(Q_{a,b}): -2 if a == b; -1 if a != b and they share the minus or the
/// plus endpoint; +1 if the minus end of one is the plus end of the other;
/// 0 otherwise.
int t_value(const Edge& a, const Edge& b) noexcept;

/// Dense n x n integer matrix, 0-based storage; vertex v maps to row v - 1.
struct IntMatrix {
  std::size_t n = 0;
  std::vector<std::int64_t> data;

  explicit IntMatrix(std::size_t dim = 0) : n(dim), data(dim * dim, 0) {}
  std::int64_t& operator()(std::size_t i, std::size_t j) { return data[i * n + j]; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return data[i * n + j]; }
  std::int64_t trace() const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator*(std::int64_t c, const IntMatrix& a);
IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);

/// Q_{a,b}: -1 at (a+, b+) and (a-, b-), +1 at (a+, b-) and (a-, b+).
IntMatrix q_matrix(const Edge& a, const Edge& b, int n);

/// Cyclic edge sequence with consecutive edges adjacent, wraparound included.
struct Circuit {
  std::vector<Edge> edges;

  friend bool operator==(const Circuit&, const Circuit&) = default;
};

/// Every edge value occurs at least twice.
bool is_vertex_matched(const Circuit& c);
/// Some edge value occurs at least three times.
bool has_order3_match(const Circuit& c);

/// Visits every circuit of length r over the edges of K_n exactly once, in
/// lexicographic order of edge indices (see edges_of). n <= 6, r <= 6.
void for_each_circuit(int n, int r, const std::function<void(const Circuit&)>& visit);
std::vector<Circuit> enumerate_circuits(int n, int r);

/// E[xi^m] for m = 0..r.
struct EdgeMomentProfile {
  std::vector<double> moments;

  static EdgeMomentProfile from_law(const EntryLaw& law, int max_power);
  /// All moments are integers, so trace moments can be summed exactly.
  bool integral() const;
};

struct TraceMomentResult {
  double value = 0.0;
  /// Present when the profile is integral.
  std::optional<std::int64_t> exact;
  std::uint64_t circuits = 0;
  std::uint64_t vertex_matched = 0;
};

/// E tr(Delta^r) = (-1)^r sum over circuits of
/// prod_j t(a_j, a_{j+1}) * prod over distinct edges e of E[xi^{mult(e)}].
/// `include`, when given, restricts the sum to circuits it accepts.
TraceMomentResult expected_trace_moment(int n, int r, const EdgeMomentProfile& profile,
                                        const std::function<bool(const Circuit&)>& include = {});

}  // namespace rmlab
