#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "oracles.hpp"
#include "tightcert/eigen.hpp"
#include "tightcert/ensembles.hpp"
#include "tightcert/error.hpp"

using namespace tightcert;

namespace {
ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::kInvalidArgument;
}

SignVector alternating(std::size_t n) {
  SignVector z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = i % 3 == 0 ? -1.0 : 1.0;
  return z;
}
}  // namespace

TEST_CASE("derive_stream is deterministic and stream-separated") {
  RngStream a = derive_stream(42, 0), b = derive_stream(42, 0), c = derive_stream(42, 1);
  std::vector<std::uint64_t> xa, xb;
  for (int i = 0; i < 10; ++i) {
    xa.push_back(a.next_u64());
    xb.push_back(b.next_u64());
  }
  CHECK(xa == xb);
  CHECK(c.next_u64() != xa[0]);
  CHECK(derive_stream(43, 0).next_u64() != xa[0]);
  CHECK(a.master_seed() == 42);
  CHECK(c.stream_id() == 1);
}

TEST_CASE("uniform, index and normal draws have the right ranges and moments") {
  RngStream rng(5, 9);
  double sum = 0.0, sum2 = 0.0;
  const int m = 200000;
  for (int i = 0; i < m; ++i) {
    const double u = rng.uniform();
    CHECK_UNARY(u >= 0.0 && u < 1.0);
    const double g = rng.normal();
    sum += g;
    sum2 += g * g;
  }
  CHECK(std::abs(sum / m) <= 4.0 / std::sqrt(m));
  CHECK(std::abs(sum2 / m - 1.0) <= 4.0 * std::sqrt(2.0 / m));
  std::vector<int> hits(7, 0);
  for (int i = 0; i < 70000; ++i) ++hits[rng.index(7)];
  for (int h : hits) CHECK(std::abs(h - 10000) <= 4 * std::sqrt(10000.0 * 6.0 / 7.0));
  CHECK(code_of([&] { (void)rng.index(0); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("resampling from a cloned stream reproduces the object") {
  RngStream a = derive_stream(42, 7), b = derive_stream(42, 7);
  CHECK(sample_er(60, 0.2, a) == sample_er(60, 0.2, b));
  CHECK(sample_sbm(40, 0.5, 0.1, a) == sample_sbm(40, 0.5, 0.1, b));
  CHECK(sample_wigner(10, a) == sample_wigner(10, b));
}

TEST_CASE("sample_wigner") {
  RngStream rng(1, 1);
  const SymmetricMatrix w1 = sample_wigner(1, rng);
  CHECK(w1.size() == 1);
  CHECK(std::isfinite(w1(0, 0)));
  // Off-diagonal mean within 4 / sqrt(#pairs) in at least 99% of seeds.
  const std::size_t n = 200;
  const double pairs = n * (n - 1) / 2.0;
  int ok = 0;
  for (int s = 0; s < 100; ++s) {
    RngStream r(300 + s, 0);
    const SymmetricMatrix w = sample_wigner(n, r);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) sum += w(i, j);
    if (std::abs(sum / pairs) <= 4.0 / std::sqrt(pairs)) ++ok;
  }
  CHECK(ok >= 99);
}

TEST_CASE("sample_er: limits and edge-count concentration") {
  RngStream rng(2, 2);
  const GraphSample e = sample_er(10, 0.0, rng);
  CHECK(e.edge_count() == 0);
  const GraphSample k = sample_er(10, 1.0, rng);
  for (std::size_t i = 0; i < 10; ++i) {
    CHECK(k.degree(i) == 9);
    CHECK_FALSE(k.has_edge(i, i));
  }
  CHECK_FALSE(k.labels().has_value());
  CHECK(k.params().ensemble == "er");
  CHECK(code_of([&] { (void)sample_er(5, 1.5, rng); }) == ErrorCode::kInvalidProbability);

  const double mean = 0.3 * 4950.0, sd = std::sqrt(4950.0 * 0.3 * 0.7);
  int ok = 0;
  for (int s = 0; s < 100; ++s) {
    RngStream r(500 + s, 0);
    if (std::abs(sample_er(100, 0.3, r).edge_count() - mean) <= 4.0 * sd) ++ok;
  }
  CHECK(ok >= 99);
}

TEST_CASE("sample_sbm: deterministic limits and labels") {
  RngStream rng(3, 3);
  const GraphSample g = sample_sbm(4, 1.0, 0.0, rng);
  CHECK(g.edges() == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {2, 3}});
  CHECK(*g.labels() == SignVector{1, 1, -1, -1});
  CHECK(*g.params().p == 1.0);
  CHECK(*g.params().q == 0.0);
  const GraphSample b = sample_sbm(4, 0.0, 1.0, rng);
  CHECK(b.edges() == std::vector<std::pair<std::size_t, std::size_t>>{{0, 2}, {0, 3}, {1, 2}, {1, 3}});
  CHECK(code_of([&] { (void)sample_sbm(5, 0.5, 0.5, rng); }) == ErrorCode::kOddDimension);
  CHECK(code_of([&] { (void)sample_sbm(4, -0.1, 0.5, rng); }) == ErrorCode::kInvalidProbability);
}

TEST_CASE("sample_sbm: intra- and inter-cluster edge counts") {
  const std::size_t n = 200, half = 100;
  const double intra_pairs = 2.0 * half * (half - 1) / 2.0, inter_pairs = half * half;
  int ok = 0;
  for (int s = 0; s < 100; ++s) {
    RngStream r(700 + s, 0);
    const GraphSample g = sample_sbm(n, 0.5, 0.1, r);
    std::size_t intra = 0, inter = 0;
    for (const auto& [i, j] : g.edges()) ((i < half) == (j < half) ? intra : inter)++;
    const bool a = std::abs(intra - 0.5 * intra_pairs) <= 4.0 * std::sqrt(intra_pairs * 0.25);
    const bool b = std::abs(inter - 0.1 * inter_pairs) <= 4.0 * std::sqrt(inter_pairs * 0.09);
    if (a && b) ++ok;
  }
  CHECK(ok >= 98);
}

TEST_CASE("set_labels validates balance and parity") {
  GraphSample g(4);
  CHECK(code_of([&] { g.set_labels({1, 1, 1, -1}); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([&] { g.set_labels({1, 0, 1, -1}); }) == ErrorCode::kNonSignVector);
  GraphSample odd(3);
  CHECK(code_of([&] { odd.set_labels({1, -1, 1}); }) == ErrorCode::kOddDimension);
  CHECK(code_of([&] { g.add_edge(1, 1); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("sample_z2sync_er: noiseless and empty limits") {
  RngStream rng(4, 4);
  const SignVector z = alternating(8);
  const SyncInstance full = sample_z2sync_er(8, 1.0, 0.0, z, rng);
  CHECK(full.h_edges.edge_count() == 0);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) CHECK(full.y(i, j) == (i == j ? 0.0 : z[i] * z[j]));
  const SyncInstance empty = sample_z2sync_er(8, 0.0, 0.0, z, rng);
  CHECK(empty.y == SymmetricMatrix(8));
  CHECK(empty.g_edges.edge_count() == 0);
  CHECK(code_of([&] { (void)sample_z2sync_er(8, 0.5, 0.5, z, rng); }) == ErrorCode::kInvalidProbability);
}

TEST_CASE("sample_z2sync_er: Y = diag(z)(A_G - 2 A_H)diag(z) and H within G") {
  for (int s = 0; s < 30; ++s) {
    RngStream rng(800 + s, 0);
    const std::size_t n = 30;
    SignVector z(n);
    for (double& v : z) v = rng.uniform() < 0.5 ? -1.0 : 1.0;
    const SyncInstance inst = sample_z2sync_er(n, 0.4, 0.2, z, rng);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (inst.h_edges.has_edge(i, j)) CHECK(inst.g_edges.has_edge(i, j));
        const double a = (inst.g_edges.has_edge(i, j) ? 1.0 : 0.0) - 2.0 * (inst.h_edges.has_edge(i, j) ? 1.0 : 0.0);
        CHECK(inst.y(i, j) == z[i] * a * z[j]);
      }
  }
}

TEST_CASE("sample_z2sync_er: corruption fraction") {
  int ok = 0;
  for (int s = 0; s < 100; ++s) {
    RngStream rng(900 + s, 0);
    const SyncInstance inst = sample_z2sync_er(100, 0.5, 0.1, SignVector(100, 1.0), rng);
    const double m = static_cast<double>(inst.g_edges.edge_count());
    const double frac = inst.h_edges.edge_count() / m;
    if (std::abs(frac - 0.1) <= 4.0 * std::sqrt(0.09 / m)) ++ok;
  }
  CHECK(ok >= 99);
}

TEST_CASE("sample_z2sync_gaussian") {
  RngStream rng(6, 6);
  const SignVector z = alternating(6);
  const SyncInstance clean = sample_z2sync_gaussian(6, 0.0, z, rng);
  CHECK(clean.y == SymmetricMatrix::outer(z));
  CHECK(clean.h_edges.edge_count() == 0);
  CHECK(clean.g_edges.edge_count() == 15);

  RngStream a(7, 0), b(7, 0);
  const SyncInstance one = sample_z2sync_gaussian(1, 1.0, SignVector{1.0}, a);
  CHECK(one.y(0, 0) == 1.0 + sample_wigner(1, b)(0, 0));

  const std::size_t n = 300;
  int inside = 0;
  for (int s = 0; s < 20; ++s) {
    RngStream r(1100 + s, 0);
    const SignVector zz = planted_labels(n);
    SyncInstance inst = sample_z2sync_gaussian(n, 1.0, zz, r);
    inst.y -= SymmetricMatrix::outer(zz);
    const double v = spectral_norm(inst.y);
    if (v >= 1.8 * std::sqrt(n) && v <= 2.2 * std::sqrt(n)) ++inside;
  }
  CHECK(inside >= 19);
}

TEST_CASE("profile_of: analytic values") {
  const EnsembleProfile er = profile_of({"centered-er", 0.5, 0.0, 0.0}, 101);
  CHECK(er.sigma * er.sigma == doctest::Approx(25.0));
  CHECK(er.sigma_inf == 0.5);
  CHECK(er.bounded());
  CHECK(profile_of({"centered-er", 0.0, 0.0, 0.0}, 50).sigma == 0.0);
  const EnsembleProfile er2 = profile_of({"centered-er", 0.05, 0.0, 0.0}, 500);
  CHECK(er2.sigma_inf == doctest::Approx(0.95));
  CHECK(er2.sigma <= er2.sigma_inf * std::sqrt(499.0));

  const EnsembleProfile sbm = profile_of({"centered-sbm", 1.0, 0.0, 0.0}, 4);
  CHECK(sbm.sigma == 0.0);
  const EnsembleProfile sbm2 = profile_of({"centered-sbm", 0.3, 0.1, 0.0}, 10);
  CHECK(sbm2.sigma * sbm2.sigma == doctest::Approx(4 * 0.21 + 5 * 0.09));

  const EnsembleProfile w = profile_of({"wigner", 0.0, 0.0, 0.0}, 10);
  CHECK(w.sigma == doctest::Approx(3.0));
  CHECK_FALSE(w.bounded());

  const EnsembleProfile z2 = profile_of({"centered-z2er", 0.2, 0.0, 0.1}, 11);
  const double drift = 0.2 * 0.8;
  CHECK(z2.sigma * z2.sigma == doctest::Approx(10 * (0.2 - drift * drift)));
  CHECK(z2.sigma_inf == doctest::Approx(1.0 + drift));

  CHECK(code_of([] { (void)profile_of({"cauchy", 0, 0, 0}, 5); }) == ErrorCode::kUnknownEnsemble);
}

TEST_CASE("profile_of: sigma against Monte Carlo second moments") {
  // Row variance of the centered ER Laplacian off-diagonal, estimated directly.
  const std::size_t n = 40;
  const double p = 0.3;
  double acc = 0.0;
  const int reps = 400;
  for (int s = 0; s < reps; ++s) {
    RngStream rng(1300 + s, 0);
    const GraphSample g = sample_er(n, p, rng);
    double row = 0.0;
    for (std::size_t j = 1; j < n; ++j) {
      const double d = (g.has_edge(0, j) ? 1.0 : 0.0) - p;
      row += d * d;
    }
    acc += row;
  }
  const double expect = profile_of({"centered-er", p, 0.0, 0.0}, n).sigma;
  CHECK(std::sqrt(acc / reps) == doctest::Approx(expect).epsilon(0.03));
}

TEST_CASE("cluster-preserving relabeling leaves SBM edge frequencies unchanged") {
  // Swap the roles of nodes 0 and 1 (same cluster): both endpoints see the
  // same intra/inter frequencies over many seeds.
  const std::size_t n = 20;
  double f01 = 0.0, f02 = 0.0, f0x = 0.0, f1x = 0.0;
  const int reps = 400;
  for (int s = 0; s < reps; ++s) {
    RngStream rng(2000 + s, 0);
    const GraphSample g = sample_sbm(n, 0.6, 0.2, rng);
    f01 += g.has_edge(0, 1);
    f02 += g.has_edge(0, 2);
    f0x += g.has_edge(0, 15);
    f1x += g.has_edge(1, 15);
  }
  const double se_p = std::sqrt(0.24 / reps), se_q = std::sqrt(0.16 / reps);
  CHECK(std::abs(f01 / reps - f02 / reps) <= 4.0 * std::sqrt(2.0) * se_p);
  CHECK(std::abs(f0x / reps - f1x / reps) <= 4.0 * std::sqrt(2.0) * se_q);
}
