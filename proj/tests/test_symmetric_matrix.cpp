#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "oracles.hpp"
#include "tightcert/error.hpp"
#include "tightcert/symmetric_matrix.hpp"

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
}  // namespace

TEST_CASE("set writes both triangles") {
  SymmetricMatrix m(3);
  m.set(0, 2, 4.5);
  CHECK(m(0, 2) == 4.5);
  CHECK(m(2, 0) == 4.5);
  m.add(2, 0, 0.5);
  CHECK(m(0, 2) == 5.0);
}

TEST_CASE("non-finite entries are rejected") {
  SymmetricMatrix m(2);
  CHECK(code_of([&] { m.set(0, 1, std::numeric_limits<double>::quiet_NaN()); }) == ErrorCode::kNonFinite);
  CHECK(code_of([&] { m.set(0, 0, std::numeric_limits<double>::infinity()); }) == ErrorCode::kNonFinite);
}

TEST_CASE("checked access reports out-of-range indices") {
  SymmetricMatrix m(2);
  CHECK(code_of([&] { (void)m.at(2, 0); }) == ErrorCode::kIndexOutOfRange);
  CHECK(code_of([&] { m.set(0, 5, 1.0); }) == ErrorCode::kIndexOutOfRange);
}

TEST_CASE("factories") {
  const SymmetricMatrix i3 = SymmetricMatrix::identity(3);
  CHECK(i3.trace() == 3.0);
  CHECK(i3(0, 1) == 0.0);
  const SymmetricMatrix j3 = SymmetricMatrix::ones(3);
  CHECK(j3.trace() == 3.0);
  CHECK(j3(1, 2) == 1.0);
  const std::vector<double> d{1.0, -2.0, 3.0};
  const SymmetricMatrix dm = SymmetricMatrix::diagonal(d);
  CHECK(dm(1, 1) == -2.0);
  CHECK(dm(0, 2) == 0.0);
  const std::vector<double> v{1.0, -1.0};
  const SymmetricMatrix o = SymmetricMatrix::outer(v);
  CHECK(o(0, 1) == -1.0);
  CHECK(o(1, 1) == 1.0);
}

TEST_CASE("from_dense requires exact symmetry, symmetrized averages") {
  const std::vector<double> ok{1, 2, 2, 3};
  CHECK(SymmetricMatrix::from_dense(2, ok)(1, 0) == 2.0);
  const std::vector<double> bad{1, 2, 2.5, 3};
  CHECK(code_of([&] { (void)SymmetricMatrix::from_dense(2, bad); }) == ErrorCode::kInvalidArgument);
  double asym = 0.0;
  const SymmetricMatrix s = SymmetricMatrix::symmetrized(2, bad, &asym);
  CHECK(s(0, 1) == doctest::Approx(2.25));
  CHECK(asym == doctest::Approx(0.5));
  CHECK(code_of([&] { (void)SymmetricMatrix::from_dense(3, ok); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("norms, row sums and products") {
  const std::vector<double> vals{2, -1, 0, -1, 2, -1, 0, -1, 2};
  const SymmetricMatrix m = SymmetricMatrix::from_dense(3, vals);
  CHECK(m.max_abs() == 2.0);
  CHECK(m.inf_norm() == 4.0);
  CHECK(m.trace() == 6.0);
  const auto rs = m.row_sums();
  CHECK(rs == std::vector<double>{1.0, 0.0, 1.0});
  const std::vector<double> x{1.0, 2.0, 3.0};
  CHECK(m.multiply(x) == oracle::matvec(m, x));
}

TEST_CASE("arithmetic operators") {
  SymmetricMatrix a = SymmetricMatrix::identity(2);
  const SymmetricMatrix b = SymmetricMatrix::ones(2);
  const SymmetricMatrix c = a + b;
  CHECK(c(0, 0) == 2.0);
  CHECK(c(0, 1) == 1.0);
  CHECK((c - b) == a);
  CHECK((2.0 * b)(1, 0) == 2.0);
  a *= -3.0;
  CHECK(a(1, 1) == -3.0);
}

TEST_CASE("conjugation by signs keeps triangles bit-identical") {
  RngStream rng(7, 0);
  for (int rep = 0; rep < 50; ++rep) {
    const SymmetricMatrix m = oracle::random_symmetric(9, rng);
    const SignVector s = oracle::random_signs(9, rng);
    const SymmetricMatrix c = m.conjugated(s);
    for (std::size_t i = 0; i < 9; ++i)
      for (std::size_t j = 0; j < 9; ++j) {
        CHECK(c(i, j) == c(j, i));
        CHECK(c(i, j) == s[i] * m(i, j) * s[j]);
      }
    CHECK(c.conjugated(s) == m);
  }
}

TEST_CASE("sign vector predicate") {
  CHECK(is_sign_vector(std::vector<double>{1, -1, 1}));
  CHECK_FALSE(is_sign_vector(std::vector<double>{1, 0}));
  CHECK_FALSE(is_sign_vector(std::vector<double>{0.5}));
}

TEST_CASE("error codes have names") {
  CHECK(to_string(ErrorCode::kNonConvergence) == "NonConvergence");
  const Error e(ErrorCode::kConfigError, "bad --n");
  CHECK(std::string(e.what()).find("bad --n") != std::string::npos);
}
