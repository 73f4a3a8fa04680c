#include "tightcert/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "tightcert/error.hpp"

namespace tightcert {

std::vector<double> Spectrum::vector(std::size_t j) const {
  if (!eigenvectors) throw Error(ErrorCode::kInvalidArgument, "spectrum has no eigenvectors");
  const std::size_t n = eigenvalues.size();
  if (j >= n) throw Error(ErrorCode::kIndexOutOfRange, "eigenvector index");
  std::vector<double> v(n);
  for (std::size_t r = 0; r < n; ++r) v[r] = (*eigenvectors)[r * n + j];
  return v;
}

TriDiagonal tridiagonalize(const SymmetricMatrix& m, bool want_q) {
  const std::size_t n = m.size();
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "empty matrix");

  // Only the lower triangle of `a` is kept current.
  std::vector<double> a(m.data().begin(), m.data().end());
  TriDiagonal t;
  t.diag.assign(n, 0.0);
  t.offdiag.assign(n - 1, 0.0);

  std::vector<double> taus(n > 2 ? n - 2 : 0, 0.0);
  std::vector<double> v(n), p(n), w(n);

  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t base = k + 1;
    const std::size_t len = n - base;

    double alpha = a[base * n + k];
    double xnorm2 = 0.0;
    for (std::size_t r = base + 1; r < n; ++r) xnorm2 += a[r * n + k] * a[r * n + k];

    t.diag[k] = a[k * n + k];
    if (xnorm2 == 0.0) {
      t.offdiag[k] = alpha;
      taus[k] = 0.0;
      continue;
    }
    const double beta = -std::copysign(std::sqrt(alpha * alpha + xnorm2), alpha);
    const double tau = (beta - alpha) / beta;
    const double scale = 1.0 / (alpha - beta);
    taus[k] = tau;
    t.offdiag[k] = beta;

    // The Householder vector is stored in place of column k below the diagonal.
    double* vv = v.data();
    vv[0] = 1.0;
    a[base * n + k] = 1.0;
    for (std::size_t r = 1; r < len; ++r) {
      const double val = a[(base + r) * n + k] * scale;
      a[(base + r) * n + k] = val;
      vv[r] = val;
    }

    // p = tau * A22 * v using the lower triangle.
    double* pp = p.data();
    std::fill(pp, pp + len, 0.0);
    for (std::size_t i = 0; i < len; ++i) {
      const double* row = a.data() + (base + i) * n + base;
      const double vi = vv[i];
      double acc = 0.0;
      for (std::size_t j = 0; j < i; ++j) {
        acc += row[j] * vv[j];
        pp[j] += row[j] * vi;
      }
      pp[i] += acc + row[i] * vi;
    }
    double pv = 0.0;
    for (std::size_t i = 0; i < len; ++i) {
      pp[i] *= tau;
      pv += pp[i] * vv[i];
    }
    const double half = 0.5 * tau * pv;
    double* ww = w.data();
    for (std::size_t i = 0; i < len; ++i) ww[i] = pp[i] - half * vv[i];

    // A22 -= v w^T + w v^T on the lower triangle.
    for (std::size_t i = 0; i < len; ++i) {
      double* row = a.data() + (base + i) * n + base;
      const double vi = vv[i];
      const double wi = ww[i];
      for (std::size_t j = 0; j <= i; ++j) row[j] -= vi * ww[j] + wi * vv[j];
    }
  }
  if (n >= 2) {
    t.diag[n - 2] = a[(n - 2) * n + (n - 2)];
    t.offdiag[n - 2] = a[(n - 1) * n + (n - 2)];
  }
  t.diag[n - 1] = a[(n - 1) * n + (n - 1)];

  if (want_q) {
    // Q = H_0 H_1 ... H_{n-3}, formed backwards.
    std::vector<double> q(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) q[i * n + i] = 1.0;
    std::vector<double> s(n);
    for (std::size_t kk = taus.size(); kk-- > 0;) {
      const double tau = taus[kk];
      if (tau == 0.0) continue;
      const std::size_t base = kk + 1;
      std::fill(s.begin(), s.end(), 0.0);
      for (std::size_t r = base; r < n; ++r) {
        const double vr = a[r * n + kk];
        const double* qrow = q.data() + r * n;
        for (std::size_t c = base; c < n; ++c) s[c] += vr * qrow[c];
      }
      for (std::size_t r = base; r < n; ++r) {
        const double f = tau * a[r * n + kk];
        double* qrow = q.data() + r * n;
        for (std::size_t c = base; c < n; ++c) qrow[c] -= f * s[c];
      }
    }
    t.q_accum = std::move(q);
  }
  return t;
}

void tridiagonal_ql(std::vector<double>& d, std::vector<double> e, std::vector<double>* z) {
  const std::size_t n = d.size();
  if (n <= 1) return;
  e.resize(n, 0.0);
  e[n - 1] = 0.0;
  constexpr double eps = std::numeric_limits<double>::epsilon();

  // z is stored transposed while rotating so that each rotation touches two rows.
  std::vector<double> zt;
  if (z != nullptr) {
    zt.assign(n * n, 0.0);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) zt[c * n + r] = (*z)[r * n + c];
  }

  for (std::size_t l = 0; l < n; ++l) {
    int sweeps = 0;
    std::size_t m = l;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (sweeps++ == kMaxQlSweeps) {
          throw Error(ErrorCode::kNonConvergence,
                      "implicit QL exceeded " + std::to_string(kMaxQlSweeps) + " sweeps at index " +
                          std::to_string(l));
        }
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        bool underflow = false;
        for (std::size_t i = m; i-- > l;) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          if (!zt.empty()) {
            double* zi = zt.data() + i * n;
            double* zi1 = zt.data() + (i + 1) * n;
            for (std::size_t k = 0; k < n; ++k) {
              f = zi1[k];
              zi1[k] = s * zi[k] + c * f;
              zi[k] = c * zi[k] - s * f;
            }
          }
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }

  if (z != nullptr) {
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) (*z)[r * n + c] = zt[c * n + r];
  }
}

Spectrum eig_all(const SymmetricMatrix& m, bool want_vectors) {
  const std::size_t n = m.size();
  TriDiagonal t = tridiagonalize(m, want_vectors);
  std::vector<double> d = t.diag;
  std::vector<double>* z = want_vectors ? &*t.q_accum : nullptr;
  tridiagonal_ql(d, t.offdiag, z);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });

  Spectrum s;
  s.eigenvalues.resize(n);
  for (std::size_t j = 0; j < n; ++j) s.eigenvalues[j] = d[order[j]];
  if (want_vectors) {
    std::vector<double> vecs(n * n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t j = 0; j < n; ++j) vecs[r * n + j] = (*z)[r * n + order[j]];

    double worst = 0.0;
    std::vector<double> col(n);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t r = 0; r < n; ++r) col[r] = vecs[r * n + j];
      const std::vector<double> mv = m.multiply(col);
      double acc = 0.0;
      for (std::size_t r = 0; r < n; ++r) {
        const double diff = mv[r] - s.eigenvalues[j] * col[r];
        acc += diff * diff;
      }
      worst = std::max(worst, std::sqrt(acc));
    }
    s.residual = worst;
    s.eigenvectors = std::move(vecs);
  }
  return s;
}

namespace {

double pivot_floor(const TriDiagonal& t) {
  double emax = 1.0;
  for (double e : t.offdiag) emax = std::max(emax, e * e);
  return std::numeric_limits<double>::min() * emax;
}

}  // namespace

std::size_t sturm_count(const TriDiagonal& t, double x) {
  const std::size_t n = t.size();
  const double pivmin = pivot_floor(t);
  std::size_t count = 0;
  double q = t.diag[0] - x;
  if (std::abs(q) < pivmin) q = -pivmin;
  if (q < 0.0) ++count;
  for (std::size_t i = 1; i < n; ++i) {
    q = t.diag[i] - x - t.offdiag[i - 1] * t.offdiag[i - 1] / q;
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++count;
  }
  return count;
}

double tridiagonal_kth(const TriDiagonal& t, std::size_t k) {
  const std::size_t n = t.size();
  if (k < 1 || k > n) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "k=" + std::to_string(k) + " outside 1.." + std::to_string(n));
  }
  if (std::all_of(t.offdiag.begin(), t.offdiag.end(), [](double e) { return e == 0.0; })) {
    std::vector<double> d = t.diag;
    std::nth_element(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(k - 1), d.end());
    return d[k - 1];
  }

  // Gershgorin enclosure.
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    const double radius = (i > 0 ? std::abs(t.offdiag[i - 1]) : 0.0) +
                          (i + 1 < n ? std::abs(t.offdiag[i]) : 0.0);
    lo = std::min(lo, t.diag[i] - radius);
    hi = std::max(hi, t.diag[i] + radius);
  }
  const double span = std::max(std::abs(lo), std::abs(hi));
  const double pad = 2.0 * std::numeric_limits<double>::epsilon() * span * static_cast<double>(n) +
                     pivot_floor(t);
  lo -= pad;
  hi += pad;

  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (hi - lo <= 2.0 * eps * std::max(std::abs(lo), std::abs(hi))) break;
    if (sturm_count(t, mid) >= k) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double lambda_k(const SymmetricMatrix& m, std::size_t k) {
  if (k < 1 || k > m.size()) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "k=" + std::to_string(k) + " outside 1.." + std::to_string(m.size()));
  }
  return tridiagonal_kth(tridiagonalize(m, false), k);
}

double spectral_norm(const SymmetricMatrix& m) { return SpectrumProbe(m).norm(); }

SpectrumProbe::SpectrumProbe(const SymmetricMatrix& m) : tri_(tridiagonalize(m, false)) {}

double SpectrumProbe::kth_smallest(std::size_t k) const { return tridiagonal_kth(tri_, k); }

double SpectrumProbe::norm() const { return std::max(std::abs(smallest()), std::abs(largest())); }

}  // namespace tightcert
