#pragma once

// Independent reference computations used by the tests. Nothing here calls
// into the library's numerical routines.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <queue>
#include <vector>

#include "tightcert/ensembles.hpp"
#include "tightcert/symmetric_matrix.hpp"

namespace oracle {

using tightcert::GraphSample;
using tightcert::SymmetricMatrix;

// Cyclic Jacobi rotations on a dense copy; ascending eigenvalues.
inline std::vector<double> jacobi_eigenvalues(const SymmetricMatrix& m) {
  const std::size_t n = m.size();
  std::vector<double> a(m.data().begin(), m.data().end());
  auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0, total = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        total += at(i, j) * at(i, j);
        if (i != j) off += at(i, j) * at(i, j);
      }
    if (off <= 1e-30 * std::max(total, 1e-300)) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = at(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

// Number of eigenvalues strictly below x from the inertia of the LDL^T
// factorisation of (m - x I) with no pivoting (Sylvester's law). Callers pick x
// away from eigenvalues so that no pivot vanishes.
inline std::size_t inertia_below(const SymmetricMatrix& m, double x) {
  const std::size_t n = m.size();
  std::vector<double> a(m.data().begin(), m.data().end());
  for (std::size_t i = 0; i < n; ++i) a[i * n + i] -= x;
  std::size_t neg = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double piv = a[k * n + k];
    if (piv < 0.0) ++neg;
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a[i * n + k] / piv;
      for (std::size_t j = k + 1; j < n; ++j) a[i * n + j] -= f * a[k * n + j];
    }
  }
  return neg;
}

inline bool bfs_connected(const GraphSample& g) {
  const std::size_t n = g.size();
  if (n <= 1) return true;
  std::vector<char> seen(n, 0);
  std::queue<std::size_t> q;
  q.push(0);
  seen[0] = 1;
  std::size_t count = 1;
  while (!q.empty()) {
    const std::size_t u = q.front();
    q.pop();
    for (std::size_t v = 0; v < n; ++v)
      if (!seen[v] && g.has_edge(u, v)) {
        seen[v] = 1;
        ++count;
        q.push(v);
      }
  }
  return count == n;
}

// P[sum_i (Z_i - W_i) >= delta] by enumerating all 4^m outcomes.
inline double tail_enumerate(std::size_t m, double p, double q, double delta) {
  double total = 0.0;
  const std::size_t outcomes = std::size_t{1} << (2 * m);
  for (std::size_t mask = 0; mask < outcomes; ++mask) {
    double prob = 1.0;
    long s = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const bool z = (mask >> (2 * i)) & 1U;
      const bool w = (mask >> (2 * i + 1)) & 1U;
      prob *= (z ? q : 1.0 - q) * (w ? p : 1.0 - p);
      s += (z ? 1 : 0) - (w ? 1 : 0);
    }
    if (static_cast<double>(s) >= delta) total += prob;
  }
  return total;
}

// Naive dense product, for checking kernels.
inline std::vector<double> matvec(const SymmetricMatrix& m, const std::vector<double>& v) {
  const std::size_t n = m.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i] += m(i, j) * v[j];
  return out;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

inline SymmetricMatrix random_symmetric(std::size_t n, tightcert::RngStream& rng, double scale = 1.0) {
  SymmetricMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m.set(i, j, scale * (2.0 * rng.uniform() - 1.0));
  return m;
}

inline tightcert::SignVector random_signs(std::size_t n, tightcert::RngStream& rng) {
  tightcert::SignVector s(n);
  for (double& v : s) v = rng.uniform() < 0.5 ? -1.0 : 1.0;
  return s;
}

}  // namespace oracle
