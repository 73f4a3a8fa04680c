#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "tightcert/eigen.hpp"
#include "tightcert/ensembles.hpp"
#include "tightcert/error.hpp"

using namespace tightcert;

namespace {

SymmetricMatrix path3() { return SymmetricMatrix::from_dense(3, std::vector<double>{1, -1, 0, -1, 2, -1, 0, -1, 1}); }

double rel_err(double a, double b, double scale) { return std::abs(a - b) / (1.0 + scale); }

}  // namespace

TEST_CASE("tridiagonalize: 1x1 and diagonal inputs") {
  const TriDiagonal t1 = tridiagonalize(SymmetricMatrix::diagonal(std::vector<double>{5.0}), false);
  CHECK(t1.diag == std::vector<double>{5.0});
  CHECK(t1.offdiag.empty());

  const TriDiagonal t3 = tridiagonalize(SymmetricMatrix::diagonal(std::vector<double>{1, 2, 3}), false);
  CHECK(t3.diag == std::vector<double>{1, 2, 3});
  for (double e : t3.offdiag) CHECK(e == 0.0);
}

TEST_CASE("tridiagonalize: spectrum preserved and Q reconstructs") {
  RngStream rng(11, 0);
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t n = 6;
    const SymmetricMatrix m = oracle::random_symmetric(n, rng);
    const TriDiagonal t = tridiagonalize(m, true);
    REQUIRE(t.q_accum.has_value());
    SymmetricMatrix tm(n);
    for (std::size_t i = 0; i < n; ++i) tm.set(i, i, t.diag[i]);
    for (std::size_t i = 0; i + 1 < n; ++i) tm.set(i, i + 1, t.offdiag[i]);
    const auto ev_m = oracle::jacobi_eigenvalues(m);
    const auto ev_t = oracle::jacobi_eigenvalues(tm);
    const double norm = std::max(std::abs(ev_m.front()), std::abs(ev_m.back()));
    for (std::size_t k = 0; k < n; ++k) CHECK(rel_err(ev_m[k], ev_t[k], norm) <= 1e-10);

    const auto& q = *t.q_accum;
    double worst = 0.0, orth = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0, o = 0.0;
        for (std::size_t a = 0; a < n; ++a) {
          o += q[a * n + i] * q[a * n + j];
          for (std::size_t b = 0; b < n; ++b) s += q[i * n + a] * tm(a, b) * q[j * n + b];
        }
        worst = std::max(worst, std::abs(s - m(i, j)));
        orth = std::max(orth, std::abs(o - (i == j ? 1.0 : 0.0)));
      }
    CHECK(worst <= kEigTol * n * (1.0 + norm));
    CHECK(orth <= kEigTol);
  }
}

TEST_CASE("eig_all: closed-form spectra") {
  const Spectrum id = eig_all(SymmetricMatrix::identity(4), false);
  CHECK(id.eigenvalues == std::vector<double>{1, 1, 1, 1});

  const Spectrum p = eig_all(path3(), true);
  REQUIRE(p.eigenvalues.size() == 3);
  CHECK(p.eigenvalues[0] == doctest::Approx(0.0).epsilon(1e-12).scale(1.0));
  CHECK(p.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(p.eigenvalues[2] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(p.residual <= 1e-12);

  SymmetricMatrix l = 4.0 * SymmetricMatrix::identity(4);
  l -= SymmetricMatrix::ones(4);
  const Spectrum s = eig_all(l, false);
  CHECK(std::abs(s.eigenvalues[0]) <= 1e-12);
  for (int k = 1; k < 4; ++k) CHECK(s.eigenvalues[k] == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("eig_all: 1x1 and determinism") {
  const Spectrum s = eig_all(SymmetricMatrix::diagonal(std::vector<double>{-2.5}), true);
  CHECK(s.eigenvalues == std::vector<double>{-2.5});
  CHECK(s.vector(0) == std::vector<double>{1.0});
  RngStream rng(3, 3);
  const SymmetricMatrix m = oracle::random_symmetric(25, rng);
  const Spectrum a = eig_all(m, true);
  const Spectrum b = eig_all(m, true);
  CHECK(a.eigenvalues == b.eigenvalues);
  CHECK(*a.eigenvectors == *b.eigenvectors);
}

TEST_CASE("eig_all: trace, orthogonality and residual over random matrices") {
  RngStream rng(2024, 1);
  int violations = 0;
  for (int rep = 0; rep < 1000; ++rep) {
    const std::size_t n = 1 + rng.index(50);
    const SymmetricMatrix m = oracle::random_symmetric(n, rng, 1.0 + 10.0 * rng.uniform());
    const Spectrum s = eig_all(m, true);
    const double norm = std::max(std::abs(s.eigenvalues.front()), std::abs(s.eigenvalues.back()));
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      sum += s.eigenvalues[k];
      if (k > 0 && s.eigenvalues[k] < s.eigenvalues[k - 1]) ++violations;
    }
    if (std::abs(sum - m.trace()) > kEigTol * n * m.max_abs()) ++violations;
    if (s.residual > kEigTol * (1.0 + norm)) ++violations;
    const auto& v = *s.eigenvectors;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        double d = 0.0;
        for (std::size_t a = 0; a < n; ++a) d += v[a * n + i] * v[a * n + j];
        if (std::abs(d - (i == j ? 1.0 : 0.0)) > kEigTol) ++violations;
      }
    // Reconstruction M = V diag(lambda) V^T.
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        double r = 0.0;
        for (std::size_t k = 0; k < n; ++k) r += v[i * n + k] * s.eigenvalues[k] * v[j * n + k];
        worst = std::max(worst, std::abs(r - m(i, j)));
      }
    if (worst > kEigTol * n * (1.0 + norm)) ++violations;
  }
  CHECK(violations == 0);
}

TEST_CASE("eig_all agrees with an independent Jacobi solver") {
  RngStream rng(99, 0);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 2 + rng.index(20);
    const SymmetricMatrix m = oracle::random_symmetric(n, rng);
    const auto ours = eig_all(m, false).eigenvalues;
    const auto ref = oracle::jacobi_eigenvalues(m);
    const double norm = std::max(std::abs(ref.front()), std::abs(ref.back()));
    for (std::size_t k = 0; k < n; ++k) CHECK(rel_err(ours[k], ref[k], norm) <= 1e-10);
  }
}

TEST_CASE("lambda_k matches eig_all for every k") {
  RngStream rng(5, 5);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 1 + rng.index(30);
    const SymmetricMatrix m = oracle::random_symmetric(n, rng, 3.0);
    const auto ev = eig_all(m, false).eigenvalues;
    const double norm = spectral_norm(m);
    for (std::size_t k = 1; k <= n; ++k) CHECK(std::abs(lambda_k(m, k) - ev[k - 1]) <= 1e-10 * (1.0 + norm));
  }
  CHECK(lambda_k(path3(), 2) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("lambda_k on repeated eigenvalues and graph Laplacians") {
  SymmetricMatrix l = 5.0 * SymmetricMatrix::identity(5);
  l -= SymmetricMatrix::ones(5);
  CHECK(std::abs(lambda_k(l, 1)) <= 1e-12);
  for (std::size_t k = 2; k <= 5; ++k) CHECK(lambda_k(l, k) == doctest::Approx(5.0).epsilon(1e-12));
  // Cycle C_n: 2 - 2 cos(2 pi j / n).
  const std::size_t n = 12;
  SymmetricMatrix c(n);
  for (std::size_t i = 0; i < n; ++i) {
    c.set(i, i, 2.0);
    c.set(i, (i + 1) % n, -1.0);
  }
  std::vector<double> expect;
  for (std::size_t j = 0; j < n; ++j) expect.push_back(2.0 - 2.0 * std::cos(2.0 * M_PI * j / n));
  std::sort(expect.begin(), expect.end());
  for (std::size_t k = 1; k <= n; ++k) CHECK(std::abs(lambda_k(c, k) - expect[k - 1]) <= 1e-12);
}

TEST_CASE("lambda_k rejects out-of-range k") {
  const SymmetricMatrix m = path3();
  for (std::size_t k : {std::size_t{0}, std::size_t{4}}) {
    try {
      (void)lambda_k(m, k);
      FAIL("no throw");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kIndexOutOfRange);
    }
  }
}

TEST_CASE("sturm_count agrees with LDL^T inertia") {
  RngStream rng(17, 2);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 1 + rng.index(25);
    const SymmetricMatrix m = oracle::random_symmetric(n, rng);
    const TriDiagonal t = tridiagonalize(m, false);
    const double x = 4.0 * rng.uniform() - 2.0;
    CHECK(sturm_count(t, x) == oracle::inertia_below(m, x));
  }
}

TEST_CASE("spectral_norm") {
  CHECK(spectral_norm(SymmetricMatrix::from_dense(2, std::vector<double>{0, 1, 1, 0})) == doctest::Approx(1.0));
  CHECK(spectral_norm(SymmetricMatrix(4)) == 0.0);
  CHECK(spectral_norm(SymmetricMatrix::diagonal(std::vector<double>{-7, 2})) == doctest::Approx(7.0));
}

TEST_CASE("spectral_norm of Wigner matrices concentrates near 2 sqrt(n)") {
  const std::size_t n = 500;
  int inside = 0;
  const int seeds = 20;
  for (int s = 0; s < seeds; ++s) {
    RngStream rng(1000 + s, 0);
    const double v = spectral_norm(sample_wigner(n, rng));
    if (v >= 1.8 * std::sqrt(n) && v <= 2.2 * std::sqrt(n)) ++inside;
  }
  CHECK(inside >= 19);  // 95% of seeds
}

TEST_CASE("conjugation by a sign vector leaves the spectrum unchanged") {
  RngStream rng(8, 8);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 2 + rng.index(30);
    const SymmetricMatrix m = oracle::random_symmetric(n, rng);
    const SignVector s = oracle::random_signs(n, rng);
    const auto a = eig_all(m, false).eigenvalues;
    const auto b = eig_all(m.conjugated(s), false).eigenvalues;
    const double norm = std::max(std::abs(a.front()), std::abs(a.back()));
    for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(a[k] - b[k]) <= 1e-10 * (1.0 + norm));
  }
}

TEST_CASE("SpectrumProbe answers several queries from one reduction") {
  const SpectrumProbe probe(path3());
  CHECK(probe.size() == 3);
  CHECK(std::abs(probe.smallest()) <= 1e-12);
  CHECK(probe.kth_smallest(2) == doctest::Approx(1.0));
  CHECK(probe.largest() == doctest::Approx(3.0));
  CHECK(probe.norm() == doctest::Approx(3.0));
}

TEST_CASE("tridiagonal_ql on a known tridiagonal") {
  std::vector<double> d{2, 2, 2, 2};
  const std::vector<double> e{-1, -1, -1};
  tridiagonal_ql(d, e, nullptr);
  std::sort(d.begin(), d.end());
  // Path of 4 with Dirichlet ends: 2 - 2 cos(k pi / 5).
  for (int k = 1; k <= 4; ++k) CHECK(d[k - 1] == doctest::Approx(2.0 - 2.0 * std::cos(k * M_PI / 5.0)));
}
