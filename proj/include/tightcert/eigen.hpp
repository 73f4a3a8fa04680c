#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "tightcert/symmetric_matrix.hpp"

namespace tightcert {

// Default relative tolerance used by the eigen routines and their checks.
inline constexpr double kEigTol = 1e-10;

// Maximum implicit QL sweeps spent on a single eigenvalue.
inline constexpr int kMaxQlSweeps = 30;

struct TriDiagonal {
  std::vector<double> diag;
  std::vector<double> offdiag;  // offdiag[i] couples i and i+1
  // Row-major n*n orthogonal Q with m = Q * T * Q^T, when requested.
  std::optional<std::vector<double>> q_accum;

  std::size_t size() const noexcept { return diag.size(); }
};

struct Spectrum {
  std::vector<double> eigenvalues;  // ascending
  // Row-major n*n; column j pairs with eigenvalues[j].
  std::optional<std::vector<double>> eigenvectors;
  double residual = 0.0;  // max_j |M v_j - lambda_j v_j|; 0 when no vectors were requested

  std::vector<double> vector(std::size_t j) const;
};

// Householder reduction to symmetric tridiagonal form.
TriDiagonal tridiagonalize(const SymmetricMatrix& m, bool want_q);

// Implicit QL with Wilkinson shifts on a tridiagonal matrix. `z` (row-major,
// n*n) is post-multiplied by the accumulated rotations when non-null.
// Eigenvalues come back unsorted. Throws NonConvergence.
void tridiagonal_ql(std::vector<double>& diag, std::vector<double> offdiag, std::vector<double>* z);

Spectrum eig_all(const SymmetricMatrix& m, bool want_vectors);

// Number of eigenvalues of t strictly below x (Sturm sequence / LDL^T inertia).
std::size_t sturm_count(const TriDiagonal& t, double x);

// k-th smallest eigenvalue of t (1-based) by bisection.
double tridiagonal_kth(const TriDiagonal& t, std::size_t k);

double lambda_k(const SymmetricMatrix& m, std::size_t k);
double spectral_norm(const SymmetricMatrix& m);

// Reduces once, then answers several order-statistic queries by bisection.
class SpectrumProbe {
 public:
  explicit SpectrumProbe(const SymmetricMatrix& m);

  std::size_t size() const noexcept { return tri_.size(); }
  double kth_smallest(std::size_t k) const;
  double smallest() const { return kth_smallest(1); }
  double largest() const { return kth_smallest(size()); }
  double norm() const;

 private:
  TriDiagonal tri_;
};

}  // namespace tightcert
