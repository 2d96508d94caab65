#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "oracles.hpp"
#include "rmlab/circuits.hpp"
#include "rmlab/ensemble.hpp"
#include "rmlab/error.hpp"
#include "rmlab/rng.hpp"

using namespace rmlab;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an rmlab::Error");
  return ErrorKind::Config;
}

// tr(L^r) for a small Laplacian, by repeated dense multiplication.
double dense_trace_power(const SymmetricMatrix& l, int r) {
  const std::size_t n = l.n();
  std::vector<double> m(n * n), p(n * n), tmp(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i * n + j] = p[i * n + j] = l(i, j);
  for (int step = 1; step < r; ++step) {
    std::fill(tmp.begin(), tmp.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j) tmp[i * n + j] += p[i * n + k] * m[k * n + j];
    p.swap(tmp);
  }
  double t = 0.0;
  for (std::size_t i = 0; i < n; ++i) t += p[i * n + i];
  return t;
}

}  // namespace

TEST_CASE("t table") {
  CHECK(t_value({2, 1}, {2, 1}) == -2);
  CHECK(t_value({3, 1}, {2, 1}) == -1);
  CHECK(t_value({3, 2}, {3, 1}) == -1);
  CHECK(t_value({2, 1}, {4, 3}) == 0);
  CHECK(t_value({3, 2}, {2, 1}) == 1);
  CHECK(t_value({2, 1}, {3, 2}) == 1);
  const auto edges = edges_of(6);
  CHECK(edges.size() == 15);
  for (const auto& a : edges)
    for (const auto& b : edges) {
      REQUIRE(t_value(a, b) == t_value(b, a));
      REQUIRE(q_matrix(a, b, 6).trace() == t_value(a, b));
    }
}

TEST_CASE("Q algebra") {
  const int n = 6;
  const auto edges = edges_of(n);
  for (const auto& a : edges) CHECK(q_matrix(a, a, n).trace() == -2);

  Xoshiro256pp g(17);
  auto pick = [&] { return edges[g() % edges.size()]; };
  for (int rep = 0; rep < 100; ++rep) {
    const Edge a = pick(), b = pick(), c = pick(), d = pick();
    REQUIRE(q_matrix(a, b, n) * q_matrix(c, d, n) == t_value(b, c) * q_matrix(a, d, n));
  }
  // Exhaustively as well, since it is cheap at n = 4.
  const auto e4 = edges_of(4);
  for (const auto& a : e4)
    for (const auto& b : e4)
      for (const auto& c : e4)
        for (const auto& d : e4)
          REQUIRE(q_matrix(a, b, 4) * q_matrix(c, d, 4) == t_value(b, c) * q_matrix(a, d, 4));

  CHECK(kind_of([] { q_matrix({5, 1}, {2, 1}, 4); }) == ErrorKind::Contract);
}

TEST_CASE("negative Laplacian as a sum of Q_aa") {
  const auto a = sample_adjacency({4, EntryLaw::rademacher(), 5, 0});
  const auto l = build_laplacian(a);
  IntMatrix sum(4);
  for (const auto& e : edges_of(4)) {
    const auto xi = static_cast<std::int64_t>(a(e.plus - 1, e.minus - 1));
    sum = sum + xi * q_matrix(e, e, 4);
  }
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(sum(i, j) == -static_cast<std::int64_t>(l(i, j)));
}

TEST_CASE("circuit enumeration") {
  CHECK(enumerate_circuits(2, 1).size() == 1);
  CHECK(enumerate_circuits(2, 2).size() == 1);
  CHECK(enumerate_circuits(3, 2).size() == 9);
  // Brute force: all r-tuples of edges, filtered by cyclic adjacency.
  for (int n = 2; n <= 4; ++n)
    for (int r = 1; r <= 4; ++r) {
      const auto edges = edges_of(n);
      const std::size_t m = edges.size();
      std::vector<Circuit> expected;
      std::vector<std::size_t> idx(static_cast<std::size_t>(r), 0);
      while (true) {
        Circuit c;
        for (std::size_t i : idx) c.edges.push_back(edges[i]);
        bool ok = true;
        for (int j = 0; j < r; ++j) ok = ok && adjacent(c.edges[j], c.edges[(j + 1) % r]);
        if (ok) expected.push_back(c);
        int pos = r - 1;
        while (pos >= 0 && ++idx[pos] == m) idx[pos--] = 0;
        if (pos < 0) break;
      }
      CAPTURE(n);
      CAPTURE(r);
      CHECK(enumerate_circuits(n, r) == expected);
    }
  CHECK(kind_of([] { enumerate_circuits(7, 2); }) == ErrorKind::Size);
  CHECK(kind_of([] { enumerate_circuits(3, 7); }) == ErrorKind::Size);
  CHECK(kind_of([] { enumerate_circuits(1, 2); }) == ErrorKind::Dimension);
}

TEST_CASE("vertex matching") {
  const Circuit twice{{{2, 1}, {2, 1}}};
  const Circuit mixed{{{2, 1}, {3, 1}}};
  const Circuit thrice{{{2, 1}, {2, 1}, {2, 1}}};
  CHECK(is_vertex_matched(twice));
  CHECK_FALSE(has_order3_match(twice));
  CHECK_FALSE(is_vertex_matched(mixed));
  CHECK(is_vertex_matched(thrice));
  CHECK(has_order3_match(thrice));
}

TEST_CASE("expected trace moments, closed forms") {
  for (int n = 2; n <= 6; ++n) {
    const auto rad = EdgeMomentProfile::from_law(EntryLaw::rademacher(), 2);
    CHECK(expected_trace_moment(n, 1, rad).value == 0.0);
    const auto r2 = expected_trace_moment(n, 2, rad);
    REQUIRE(r2.exact.has_value());
    CHECK(*r2.exact == 2 * n * (n - 1));
    const auto gauss = EdgeMomentProfile::from_law(EntryLaw::gaussian(0.0, 1.0), 2);
    CHECK(expected_trace_moment(n, 2, gauss).value == doctest::Approx(2.0 * n * (n - 1)));
  }
  // Non-centered r = 1: E tr = n(n-1) mu.
  const auto b = EdgeMomentProfile::from_law(EntryLaw::bernoulli(0.3), 1);
  CHECK(expected_trace_moment(5, 1, b).value == doctest::Approx(5 * 4 * 0.3));
  CHECK_FALSE(b.integral());
}

TEST_CASE("exact agreement with exhaustive sign assignments") {
  const auto rad = EdgeMomentProfile::from_law(EntryLaw::rademacher(), 4);
  REQUIRE(rad.integral());
  for (int n = 2; n <= 4; ++n)
    for (int r = 1; r <= 4; ++r) {
      const std::int64_t total = oracle::exhaustive_sign_trace_sum(n, r);
      const std::int64_t count = std::int64_t{1} << (n * (n - 1) / 2);
      REQUIRE(total % count == 0);
      const auto res = expected_trace_moment(n, r, rad);
      REQUIRE(res.exact.has_value());
      CAPTURE(n);
      CAPTURE(r);
      CHECK(*res.exact == total / count);
    }
}

TEST_CASE("Monte Carlo agreement at n = 5") {
  const int n = 5;
  const int trials = 100000;
  for (const auto& law : {EntryLaw::rademacher(), EntryLaw::gaussian(0.0, 1.0),
                          EntryLaw::bernoulli(0.3)}) {
    for (int r : {3, 4}) {
      const auto expected = expected_trace_moment(n, r, EdgeMomentProfile::from_law(law, r)).value;
      double sum = 0.0, sum2 = 0.0;
      for (int t = 0; t < trials; ++t) {
        const auto l = build_laplacian(sample_adjacency({n, law, 1234, static_cast<std::uint64_t>(t)}));
        const double v = dense_trace_power(l, r);
        sum += v;
        sum2 += v * v;
      }
      const double mean = sum / trials;
      const double se = std::sqrt((sum2 / trials - mean * mean) / trials);
      CAPTURE(law.name());
      CAPTURE(r);
      CAPTURE(expected);
      CAPTURE(mean);
      CHECK(std::abs(mean - expected) <= 4.0 * se);
    }
  }
}

TEST_CASE("odd powers of symmetric laws need an order-3 match") {
  for (const auto& law : {EntryLaw::rademacher(), EntryLaw::gaussian(0.0, 2.0)}) {
    for (int n = 3; n <= 5; ++n) {
      for (int r : {3, 5}) {
        const auto profile = EdgeMomentProfile::from_law(law, r);
        const auto full = expected_trace_moment(n, r, profile);
        const auto pruned = expected_trace_moment(n, r, profile, has_order3_match);
        const auto rest = expected_trace_moment(
            n, r, profile, [](const Circuit& c) { return !has_order3_match(c); });
        CHECK(pruned.value == doctest::Approx(full.value));
        CHECK(rest.value == doctest::Approx(0.0));
        std::size_t dropped = 0;
        for_each_circuit(n, r, [&](const Circuit& c) { dropped += has_order3_match(c) ? 0 : 1; });
        CHECK(dropped > 0);
      }
    }
  }
}
