#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "rmlab/ensemble.hpp"
#include "rmlab/error.hpp"
#include "rmlab/spectra.hpp"

using namespace rmlab;

namespace {

SymmetricMatrix ones(std::size_t n, double value = 1.0) {
  SymmetricMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) m.set(i, j, value);
  return m;
}

std::vector<double> eigen_oracle(const SymmetricMatrix& m) {
  const auto dense = m.to_dense();
  const auto n = static_cast<Eigen::Index>(m.n());
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> a(
      dense.data(), n, n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  std::vector<double> ev(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  std::sort(ev.begin(), ev.end(), std::greater<>());
  return ev;
}

}  // namespace

TEST_CASE("small exact spectra") {
  SUBCASE("J_3") {
    const auto s = eigenvalues_sym(ones(3));
    CHECK(s.eigenvalues[0] == doctest::Approx(3.0));
    CHECK(std::abs(s.eigenvalues[1]) < 1e-14);
    CHECK(std::abs(s.eigenvalues[2]) < 1e-14);
  }
  SUBCASE("diag(1,2,3)") {
    SymmetricMatrix m(3);
    m.set(0, 0, 1.0);
    m.set(1, 1, 2.0);
    m.set(2, 2, 3.0);
    CHECK(eigenvalues_sym(m).eigenvalues == std::vector<double>{3.0, 2.0, 1.0});
  }
  SUBCASE("mu (J_n - I_n) has eigenvalues (n-1) mu and -mu") {
    const double mu = 0.3;
    const auto s = eigenvalues_sym(ones(5, mu).shifted(-mu));
    CHECK(s.eigenvalues[0] == doctest::Approx(1.2).epsilon(1e-12));
    for (std::size_t i = 1; i < 5; ++i) CHECK(s.eigenvalues[i] == doctest::Approx(-0.3).epsilon(1e-12));
  }
  SUBCASE("Laplacian of the complete graph K_3") {
    const auto l = build_laplacian(sample_adjacency({3, EntryLaw::bernoulli(1.0), 1, 0}));
    const auto s = eigenvalues_sym(l, SpectrumSource::Laplacian);
    CHECK(s.eigenvalues[0] == doctest::Approx(3.0));
    CHECK(s.eigenvalues[1] == doctest::Approx(3.0));
    CHECK(std::abs(s.eigenvalues[2]) < 1e-14);
  }
  SUBCASE("1x1 and empty") {
    SymmetricMatrix m(1);
    m.set(0, 0, -4.0);
    CHECK(eigenvalues_sym(m).eigenvalues == std::vector<double>{-4.0});
    CHECK(eigenvalues_sym(SymmetricMatrix(0)).eigenvalues.empty());
  }
}

TEST_CASE("non-finite entries are a numeric error") {
  SymmetricMatrix m(3);
  m.set(2, 1, std::nan(""));
  try {
    eigenvalues_sym(m);
    FAIL("expected a numeric error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Numeric);
  }
}

TEST_CASE("agreement with an independent dense solver") {
  for (std::uint64_t t = 0; t < 5; ++t) {
    const auto a = sample_adjacency({120 + 17 * t, EntryLaw::gaussian(0.1, 1.0), 77, t});
    for (const auto* m : {&a}) {
      const auto ours = eigenvalues_sym(*m).eigenvalues;
      const auto ref = eigen_oracle(*m);
      const double scale = std::sqrt(m->frobenius_squared());
      for (std::size_t i = 0; i < ours.size(); ++i) REQUIRE(std::abs(ours[i] - ref[i]) <= 1e-11 * scale);
    }
    const auto l = build_laplacian(a);
    const auto ours = eigenvalues_sym(l).eigenvalues;
    const auto ref = eigen_oracle(l);
    for (std::size_t i = 0; i < ours.size(); ++i)
      REQUIRE(std::abs(ours[i] - ref[i]) <= 1e-11 * std::sqrt(l.frobenius_squared()));
  }
}

TEST_CASE("trace, Frobenius, shift and residual identities") {
  for (std::uint64_t t = 0; t < 6; ++t) {
    const auto law = t % 2 == 0 ? EntryLaw::gaussian(0.0, 1.0) : EntryLaw::bernoulli(0.4);
    const auto a = sample_adjacency({150, law, 5, t});
    const auto l = build_laplacian(a);
    for (const auto* m : {&a, &l}) {
      const auto s = eigenvalues_sym(*m);
      const std::size_t n = m->n();
      REQUIRE(std::is_sorted(s.eigenvalues.begin(), s.eigenvalues.end(), std::greater<>()));
      double sum = 0.0, sq = 0.0;
      for (double v : s.eigenvalues) {
        sum += v;
        sq += v * v;
      }
      CHECK(std::abs(sum - m->trace()) <= 1e-8 * n * m->max_abs());
      CHECK(std::abs(sq - m->frobenius_squared()) <= 1e-6 * m->frobenius_squared());

      const double c = 2.5;
      const auto shifted = eigenvalues_sym(m->shifted(c));
      const double norm = s.spectral_norm();
      for (std::size_t i = 0; i < n; ++i) {
        REQUIRE(std::abs(shifted.eigenvalues[i] - (s.eigenvalues[i] + c)) <= 1e-10 * (norm + c));
      }
    }
    // Residual spot check on lambda_1 via inverse iteration in Eigen.
    const auto s = eigenvalues_sym(l);
    const auto dense = l.to_dense();
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> lm(
        dense.data(), 150, 150);
    const Eigen::MatrixXd shifted =
        lm - (s.largest() + 1e-7) * Eigen::MatrixXd::Identity(150, 150);
    Eigen::VectorXd v = Eigen::VectorXd::Ones(150);
    const auto lu = shifted.partialPivLu();
    for (int it = 0; it < 5; ++it) v = lu.solve(v).normalized();
    const double residual = (lm * v - s.largest() * v).norm();
    CHECK(residual <= 1e-8 * 150 * std::sqrt(l.frobenius_squared()));
  }
}

TEST_CASE("Laplacian zero mode for nonnegative entries") {
  for (std::uint64_t t = 0; t < 4; ++t) {
    const auto l = build_laplacian(sample_adjacency({200, EntryLaw::bernoulli(0.2), 8, t}));
    const auto s = eigenvalues_sym(l, SpectrumSource::Laplacian);
    const double scale = s.spectral_norm();
    CHECK(std::abs(s.smallest()) <= 1e-8 * scale);
  }
}

TEST_CASE("spectral norm") {
  Spectrum s{{3.0, 0.5, -4.0}, SpectrumSource::Other};
  CHECK(s.spectral_norm() == 4.0);
  s.eigenvalues = {5.0, -1.0};
  CHECK(s.spectral_norm() == 5.0);
  CHECK(s.kth_largest(2) == -1.0);
  CHECK_THROWS_AS(s.kth_largest(3), Error);
}

TEST_CASE("lambda_max_fast") {
  SUBCASE("J_n, k = 1") {
    LanczosReport rep;
    const auto top = lambda_max_fast(ones(40), 1, {}, &rep);
    CHECK(top[0] == doctest::Approx(40.0).epsilon(1e-12));
    CHECK_FALSE(rep.dense_fallback);
  }
  SUBCASE("3 I - J keeps the repeated eigenvalue") {
    const auto l = build_laplacian(sample_adjacency({3, EntryLaw::bernoulli(1.0), 1, 0}));
    const auto top = lambda_max_fast(l, 2);
    CHECK(top[0] == doctest::Approx(3.0));
    CHECK(top[1] == doctest::Approx(3.0));
  }
  SUBCASE("n K_n Laplacian, repeated top eigenvalue at larger n") {
    const auto l = build_laplacian(sample_adjacency({30, EntryLaw::bernoulli(1.0), 1, 0}));
    LanczosReport rep;
    const auto top = lambda_max_fast(l, 3, {}, &rep);
    for (double v : top) CHECK(v == doctest::Approx(30.0).epsilon(1e-10));
  }
  SUBCASE("Gaussian adjacency n = 300 matches the dense solver") {
    const auto a = sample_adjacency({300, EntryLaw::gaussian(0.0, 1.0), 2024, 0});
    const auto dense = eigenvalues_sym(a).eigenvalues;
    LanczosReport rep;
    const auto top = lambda_max_fast(a, 3, {}, &rep);
    CHECK(rep.converged);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(std::abs(top[i] - dense[i]) <= 1e-8 * std::abs(dense[i]));
    }
  }
  SUBCASE("Laplacian top eigenvalue at n = 500") {
    const auto l = build_laplacian(sample_adjacency({500, EntryLaw::gaussian(0.0, 1.0), 1, 3}));
    LanczosReport rep;
    const auto top = lambda_max_fast(l, 1, {}, &rep);
    const auto dense = eigenvalues_sym(l).eigenvalues;
    CHECK_FALSE(rep.dense_fallback);
    CHECK(std::abs(top[0] - dense[0]) <= 1e-8 * std::abs(dense[0]));
  }
  SUBCASE("stagnation falls back to the dense solver") {
    const auto a = sample_adjacency({250, EntryLaw::gaussian(0.0, 1.0), 4, 0});
    LanczosOptions opt;
    opt.max_iterations = 12;
    LanczosReport rep;
    const auto top = lambda_max_fast(a, 5, opt, &rep);
    const auto dense = eigenvalues_sym(a).eigenvalues;
    CHECK(rep.dense_fallback);
    for (std::size_t i = 0; i < 5; ++i) CHECK(top[i] == dense[i]);
  }
  SUBCASE("zero matrix") {
    CHECK(lambda_max_fast(SymmetricMatrix(5, true), 2) == std::vector<double>{0.0, 0.0});
  }
  SUBCASE("k out of range") {
    try {
      lambda_max_fast(ones(4), 5);
      FAIL("expected a dimension error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Dimension);
    }
  }
}

TEST_CASE("normalizations") {
  SUBCASE("Laplacian arithmetic") {
    const Spectrum s{{8.0, 4.0, 0.0, 0.0}, SpectrumSource::Laplacian};
    const auto esd = normalize_laplacian_spectrum(s, 4, 1.0, 2.0);
    CHECK(esd.support().back() == 1.0);
    const auto plain = normalize_laplacian_spectrum(s, 4, 0.0, 1.0);
    CHECK(plain.support().back() == 4.0);
  }
  SUBCASE("adjacency adds mu") {
    const Spectrum s{{-1.0, -1.0, -1.0, 3.0}, SpectrumSource::Adjacency};
    const auto esd = normalize_adjacency_spectrum(s, 4, 1.0, 0.5);
    CHECK(esd.support().front() == 0.0);
  }
  SUBCASE("dilute scaling") {
    const Spectrum s{{2.0, -2.0}, SpectrumSource::Adjacency};
    const auto esd = normalize_dilute_adjacency(s, 100, 0.5);
    CHECK(esd.support().back() == doctest::Approx(2.0 / 5.0));
  }
  SUBCASE("parameter and source errors") {
    const Spectrum lap{{1.0}, SpectrumSource::Laplacian};
    try {
      normalize_laplacian_spectrum(lap, 1, 0.0, 0.0);
      FAIL("expected a parameter error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Parameter);
    }
    CHECK_THROWS_AS(normalize_adjacency_spectrum(lap, 1, 0.0, 1.0), Error);
  }
}

TEST_CASE("ESD step function") {
  const std::vector<double> vals{2.0, 1.0, 1.0, 3.0};
  const Esd esd(vals, {});
  CHECK(esd.cdf(0.5) == 0.0);
  CHECK(esd.cdf(1.0) == 0.5);
  CHECK(esd.cdf_left(1.0) == 0.0);
  CHECK(esd.cdf(2.0) == 0.75);
  CHECK(esd.cdf(10.0) == 1.0);
  const auto atoms = esd.atoms();
  REQUIRE(atoms.size() == 3);
  CHECK(atoms[0].multiplicity == 2);
  // F jumps by multiplicity / n at each atom.
  for (const auto& at : atoms) {
    CHECK(esd.cdf(at.x) - esd.cdf_left(at.x) == doctest::Approx(at.multiplicity / 4.0));
  }
}

TEST_CASE("complete graph: adjacency ESD sits at -1 with mass (n-1)/n") {
  const std::size_t n = 200;
  const auto a = sample_adjacency({n, EntryLaw::bernoulli(1.0), 1, 0});
  const auto s = eigenvalues_sym(a, SpectrumSource::Adjacency);
  const auto esd = raw_esd(s);
  const double tol = 1e-8 * std::sqrt(a.frobenius_squared());
  const auto atoms = esd.atoms(tol);
  REQUIRE(atoms.size() == 2);
  CHECK(atoms[0].x == doctest::Approx(-1.0));
  CHECK(atoms[0].multiplicity == n - 1);
  CHECK(atoms[1].x == doctest::Approx(n - 1.0));
}

TEST_CASE("Erdos-Renyi p = 0.3 normalized Laplacian variance near 2") {
  const std::size_t n = 2000;
  const auto law = EntryLaw::bernoulli(0.3);
  const auto l = build_laplacian(sample_adjacency({n, law, 31, 0}));
  auto s = eigenvalues_sym(l, SpectrumSource::Laplacian);
  // The kernel eigenvalue 0 maps to -sqrt(n) mu / sigma and alone adds
  // mu^2 / sigma^2 to the second moment at every n; it is left out.
  CHECK(std::abs(s.smallest()) <= 1e-8 * s.spectral_norm());
  s.eigenvalues.pop_back();
  const auto esd = normalize_laplacian_spectrum(s, n, law.mean(), law.sd());
  const double m = static_cast<double>(esd.size());
  double mean = 0.0;
  for (double x : esd.support()) mean += x;
  mean /= m;
  double var = 0.0;
  for (double x : esd.support()) var += (x - mean) * (x - mean);
  var /= m;
  CHECK(std::abs(var - 2.0) <= 0.2);

  s.eigenvalues.push_back(0.0);
  const auto with_kernel = normalize_laplacian_spectrum(s, n, law.mean(), law.sd());
  double m2 = 0.0;
  for (double x : with_kernel.support()) m2 += x * x;
  m2 /= static_cast<double>(n);
  const double outlier = law.mean() * law.mean() / law.variance();
  CHECK(std::abs(m2 - (2.0 + outlier)) <= 0.2);
}
