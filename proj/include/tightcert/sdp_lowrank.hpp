#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "tightcert/ensembles.hpp"
#include "tightcert/symmetric_matrix.hpp"

namespace tightcert {

// X = R R^T with unit-norm rows of R (n x k, row-major): feasible for
// max Tr(Y X) s.t. X_ii = 1, X psd.
struct FactorPoint {
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<double> r;

  std::span<const double> row(std::size_t i) const { return {r.data() + i * k, k}; }
  double max_row_norm_error() const;
};

struct DualCheck {
  bool feasible = false;  // lambda1(D - Y) >= -tol
  double gap = 0.0;       // Tr(D) - x^T Y x
  double lambda1 = 0.0;
  double lambda2 = 0.0;
};

struct SolveReport {
  double objective = 0.0;  // Tr(Y R R^T)
  SignVector rounded_x;
  double rounded_objective = 0.0;  // x^T Y x
  double grad_norm = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  // Tr(D) - Tr(Y R R^T) with D built from rounded_x; empty when that D is not dual feasible.
  std::optional<double> dual_gap;
  std::vector<double> objective_trace;  // objective after each accepted step
};

struct BmOptions {
  std::size_t rank = 0;  // 0 selects ceil(sqrt(2n))
  std::size_t max_iters = 2000;
  double grad_tol = 1e-8;
  double armijo = 1e-4;
  bool record_trace = false;
};

struct BmResult {
  FactorPoint point;
  SolveReport report;
};

std::size_t default_rank(std::size_t n);

// Riemannian gradient ascent on the product of spheres with a row-normalising
// retraction and backtracking line search. Does not throw on hitting the
// iteration cap; report.converged is false instead.
BmResult bm_solve(const SymmetricMatrix& y, const BmOptions& opts, RngStream& rng);

// Sign of the leading eigenvector of R R^T (zeros map to +1).
SignVector round_rank_one(const FactorPoint& pt);

DualCheck verify_optimal(const SymmetricMatrix& y, std::span<const double> x, double tol = 1e-9);

// bm_solve + rounding + dual check; restarts once with a fresh stream derived
// from rng when `expected` is given and the rounding misses it.
struct CrossCheck {
  BmResult result;
  DualCheck dual;
  bool recovered = false;  // rounded x equals +-expected
  bool restarted = false;
};

CrossCheck solve_and_verify(const SymmetricMatrix& y, const BmOptions& opts, RngStream& rng,
                            std::optional<std::span<const double>> expected = std::nullopt);

bool equal_up_to_sign(std::span<const double> a, std::span<const double> b);

}  // namespace tightcert
