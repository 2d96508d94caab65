#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "rmlab/ensemble.hpp"
#include "rmlab/error.hpp"
#include "rmlab/rng.hpp"

using namespace rmlab;

TEST_CASE("xoshiro256++ reference outputs") {
  // Reference vector for state {1, 2, 3, 4} from the generator's authors.
  auto g = Xoshiro256pp::from_state({1, 2, 3, 4});
  const std::uint64_t expected[] = {41943041ULL, 58720359ULL, 3588806011781223ULL,
                                    3591011842654386ULL, 9228616714210784205ULL,
                                    9973669472204895162ULL, 14011001112246962877ULL,
                                    12406186145184390807ULL, 15849039046786891736ULL,
                                    10450023813501588000ULL};
  for (std::uint64_t e : expected) CHECK(g() == e);
}

TEST_CASE("trial seeds follow the splitmix derivation and do not collide") {
  CHECK(derive_trial_seed(0, 0) == splitmix64_mix(kGoldenGamma));
  CHECK(derive_trial_seed(7, 2) == splitmix64_mix(7 + 3 * kGoldenGamma));
  // Wraparound is modular.
  CHECK(derive_trial_seed(~0ULL, 0) == splitmix64_mix(kGoldenGamma - 1));

  std::set<std::uint64_t> seen;
  for (std::uint64_t t = 0; t <= 1000000; ++t) seen.insert(derive_trial_seed(20240917, t));
  CHECK(seen.size() == 1000001);
}

TEST_CASE("uniform draws lie in [0, 1)") {
  Xoshiro256pp g(99);
  for (int i = 0; i < 100000; ++i) {
    const double u = g.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
  }
}

TEST_CASE("degenerate Bernoulli streams") {
  CHECK(sample_entry_stream(EntryLaw::bernoulli(1.0), 5, 5) == std::vector<double>(5, 1.0));
  CHECK(sample_entry_stream(EntryLaw::bernoulli(0.0), 5, 5) == std::vector<double>(5, 0.0));
}

TEST_CASE("sign-sparse sample mean within the CLT bound") {
  const auto xs = sample_entry_stream(EntryLaw::sign_sparse(0.5), 11, 1000000);
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  CHECK(std::abs(mean) <= 4.0 * std::sqrt(0.5 / 1e6));
}

TEST_CASE("closed-form law moments") {
  const auto b = EntryLaw::bernoulli(0.3);
  CHECK(b.mean() == doctest::Approx(0.3));
  CHECK(b.variance() == doctest::Approx(0.21));
  const auto s = EntryLaw::sign_sparse(0.4);
  CHECK(s.mean() == 0.0);
  CHECK(s.variance() == doctest::Approx(0.4));
  const auto c = EntryLaw::centered_bernoulli(0.5);
  CHECK(c.mean() == 0.0);
  CHECK(c.variance() == doctest::Approx(0.25));
  CHECK(c.raw_moment(2) == doctest::Approx(0.25));
  const auto g = EntryLaw::gaussian(1.0, 2.0);
  CHECK(g.raw_moment(2) == doctest::Approx(5.0));
  CHECK(g.raw_moment(4) == doctest::Approx(1.0 + 6.0 * 4.0 + 3.0 * 16.0));
  const auto t = EntryLaw::table({-2.0, 1.0}, {1.0 / 3.0, 2.0 / 3.0});
  CHECK(t.mean() == doctest::Approx(0.0));
  CHECK(t.variance() == doctest::Approx(2.0));
}

TEST_CASE("moment fidelity over 10^6 draws") {
  const std::vector<EntryLaw> laws = {
      EntryLaw::bernoulli(0.3),      EntryLaw::centered_bernoulli(0.5),
      EntryLaw::sign_sparse(0.2),    EntryLaw::gaussian(0.5, 1.5),
      EntryLaw::rademacher(),        EntryLaw::table({-1.0, 0.5, 3.0}, {0.2, 0.7, 0.1}),
  };
  const double count = 1e6;
  std::uint64_t seed = 100;
  for (const auto& law : laws) {
    CAPTURE(law.name());
    const auto xs = sample_entry_stream(law, seed++, static_cast<std::size_t>(count));
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= count;
    double var = 0.0;
    for (double x : xs) var += (x - law.mean()) * (x - law.mean());
    var /= count;
    // Central fourth moment from raw moments gives the variance of s^2.
    const double m1 = law.raw_moment(1), m2 = law.raw_moment(2), m3 = law.raw_moment(3),
                 m4 = law.raw_moment(4);
    const double mu4 = m4 - 4 * m1 * m3 + 6 * m1 * m1 * m2 - 3 * std::pow(m1, 4);
    const double se_mean = std::sqrt(law.variance() / count);
    const double se_var = std::sqrt((mu4 - law.variance() * law.variance()) / count);
    CHECK(std::abs(mean - law.mean()) <= 5 * se_mean);
    CHECK(std::abs(var - law.variance()) <= 5 * se_var);
  }
}

TEST_CASE("law validation") {
  CHECK_THROWS_AS(EntryLaw::bernoulli(1.5), Error);
  CHECK_THROWS_AS(EntryLaw::gaussian(0.0, 0.0), Error);
  try {
    EntryLaw::table({1.0, 2.0}, {1.0});
    FAIL("expected a configuration error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Config);
  }
  CHECK_THROWS_AS(EntryLaw::table({1.0, 2.0}, {0.5, 0.6}), Error);
  CHECK(EntryLaw::bernoulli(1.0).degenerate());
}

TEST_CASE("validate_condition5") {
  CHECK(validate_condition5(EntryLaw::gaussian(0, 1), 6.5));
  CHECK(validate_condition5(EntryLaw::bernoulli(0.5), 100.0));
  CHECK_FALSE(validate_condition5(EntryLaw::table({-1.0, 1.0}, {0.5, 0.5}, 4.0), 6.5));
  CHECK(validate_condition5(EntryLaw::table({-1.0, 1.0}, {0.5, 0.5}, 8.0), 6.5));
  CHECK_FALSE(validate_condition5(EntryLaw::bernoulli(1.0), 2.0));
}

TEST_CASE("adjacency sampling") {
  SUBCASE("Bernoulli(1) gives J - I") {
    const auto a = sample_adjacency({3, EntryLaw::bernoulli(1.0), 1, 0});
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) CHECK(a(i, j) == (i == j ? 0.0 : 1.0));
  }
  SUBCASE("Bernoulli(0) gives zero") {
    const auto a = sample_adjacency({7, EntryLaw::bernoulli(0.0), 1, 0});
    CHECK(a.max_abs() == 0.0);
  }
  SUBCASE("Bernoulli(0.5) edge density") {
    const auto a = sample_adjacency({1000, EntryLaw::bernoulli(0.5), 3, 0});
    double sum = 0.0;
    for (std::size_t i = 0; i < 1000; ++i)
      for (std::size_t j = i + 1; j < 1000; ++j) sum += a(i, j);
    const double mean = sum / 499500.0;
    CHECK(std::abs(mean - 0.5) <= 4.0 * std::sqrt(0.25 / 499500.0));
  }
  SUBCASE("n < 2 is a dimension error") {
    try {
      sample_adjacency({1, EntryLaw::rademacher(), 1, 0});
      FAIL("expected a dimension error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Dimension);
    }
  }
}

TEST_CASE("determinism and symmetry") {
  const EnsembleConfig cfg{60, EntryLaw::gaussian(0.2, 1.0), 42, 5};
  const auto a = sample_adjacency(cfg);
  const auto b = sample_adjacency(cfg);
  CHECK(a == b);
  auto other = cfg;
  other.trial_index = 6;
  CHECK_FALSE(a == sample_adjacency(other));
  const auto l = build_laplacian(a);
  for (std::size_t i = 0; i < 60; ++i) {
    CHECK(a(i, i) == 0.0);
    for (std::size_t j = 0; j < 60; ++j) {
      REQUIRE(a(i, j) == a(j, i));
      REQUIRE(l(i, j) == l(j, i));
    }
  }
}

TEST_CASE("Laplacian construction") {
  SUBCASE("complete graph") {
    const auto l = build_laplacian(sample_adjacency({3, EntryLaw::bernoulli(1.0), 1, 0}));
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) CHECK(l(i, j) == (i == j ? 2.0 : -1.0));
  }
  SUBCASE("zero") {
    CHECK(build_laplacian(SymmetricMatrix(4, true)).max_abs() == 0.0);
  }
  SUBCASE("kernel contains the all-ones vector") {
    for (const auto& law : {EntryLaw::gaussian(0.0, 1.0), EntryLaw::bernoulli(0.3),
                            EntryLaw::table({-5.0, 2.0}, {0.25, 0.75})}) {
      const auto a = sample_adjacency({200, law, 9, 1});
      const auto l = build_laplacian(a);
      const std::vector<double> ones(200, 1.0);
      std::vector<double> y(200);
      l.multiply(ones, y);
      const double tol = 1e-10 * 200 * a.max_abs();
      for (double v : y) REQUIRE(std::abs(v) <= tol);
      for (double r : l.row_sums()) REQUIRE(std::abs(r) <= tol);
    }
  }
  SUBCASE("nonzero diagonal is a contract error") {
    SymmetricMatrix m(3);
    m.set(1, 1, 2.0);
    try {
      build_laplacian(m);
      FAIL("expected a contract error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Contract);
    }
  }
}
