#include "tightcert/sdp_lowrank.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tightcert/certificates.hpp"
#include "tightcert/eigen.hpp"
#include "tightcert/error.hpp"
#include "tightcert/kernels.hpp"

namespace tightcert {

namespace {

void normalize_rows(std::vector<double>& r, std::size_t n, std::size_t k) {
  for (std::size_t i = 0; i < n; ++i) {
    double* row = r.data() + i * k;
    double s = 0.0;
    for (std::size_t c = 0; c < k; ++c) s += row[c] * row[c];
    const double inv = 1.0 / std::sqrt(s);
    for (std::size_t c = 0; c < k; ++c) row[c] *= inv;
  }
}

double frob_inner(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Power-iteration estimate of |Y| (a lower bound after finitely many steps).
double norm_estimate(const SymmetricMatrix& y) {
  const std::size_t n = y.size();
  std::vector<double> v(n), w(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 + 0.01 * static_cast<double>(i % 7);
  double est = 0.0;
  for (int it = 0; it < 30; ++it) {
    const double nv = std::sqrt(frob_inner(v, v));
    if (nv == 0.0) break;
    for (double& a : v) a /= nv;
    kernels::symv(y, v, w);
    est = std::sqrt(frob_inner(w, w));
    std::swap(v, w);
  }
  return std::max(est, 1e-300);
}

}  // namespace

double FactorPoint::max_row_norm_error() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto rw = row(i);
    worst = std::max(worst, std::abs(std::sqrt(frob_inner(rw, rw)) - 1.0));
  }
  return worst;
}

std::size_t default_rank(std::size_t n) {
  const auto k = static_cast<std::size_t>(std::ceil(std::sqrt(2.0 * static_cast<double>(n))));
  return std::max<std::size_t>(k, 2);
}

BmResult bm_solve(const SymmetricMatrix& y, const BmOptions& opts, RngStream& rng) {
  const std::size_t n = y.size();
  const std::size_t k = opts.rank == 0 ? default_rank(n) : opts.rank;
  if (k < 2) throw Error(ErrorCode::kInvalidArgument, "rank must be >= 2");
  if (!(opts.grad_tol > 0.0)) throw Error(ErrorCode::kInvalidArgument, "grad_tol must be positive");
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "empty matrix");

  BmResult out;
  FactorPoint& pt = out.point;
  pt.n = n;
  pt.k = k;
  pt.r.resize(n * k);
  for (double& v : pt.r) v = rng.normal();
  normalize_rows(pt.r, n, k);

  const double ynorm = norm_estimate(y);
  // 1/|Y| along P(YR), i.e. half of that along the full gradient 2 P(YR).
  const double step0 = 0.5 / ynorm;
  const double stop = opts.grad_tol * (1.0 + ynorm);

  std::vector<double> yr(n * k), grad(n * k), cand(n * k), cand_yr(n * k);
  kernels::sym_times_dense(y, pt.r, k, yr);
  double f = frob_inner(pt.r, yr);

  SolveReport& rep = out.report;
  std::size_t it = 0;
  for (; it < opts.max_iters; ++it) {
    // Riemannian gradient of Tr(Y R R^T): 2 (YR)_i projected off r_i.
    for (std::size_t i = 0; i < n; ++i) {
      const double* r = pt.r.data() + i * k;
      const double* g = yr.data() + i * k;
      double* out_g = grad.data() + i * k;
      double dot = 0.0;
      for (std::size_t c = 0; c < k; ++c) dot += r[c] * g[c];
      for (std::size_t c = 0; c < k; ++c) out_g[c] = 2.0 * (g[c] - dot * r[c]);
    }
    const double g2 = frob_inner(grad, grad);
    rep.grad_norm = std::sqrt(g2);
    if (rep.grad_norm <= stop) {
      rep.converged = true;
      break;
    }

    double t = step0;
    bool accepted = false;
    while (t > 1e-30 * step0) {
      for (std::size_t a = 0; a < cand.size(); ++a) cand[a] = pt.r[a] + t * grad[a];
      normalize_rows(cand, n, k);
      kernels::sym_times_dense(y, cand, k, cand_yr);
      const double fc = frob_inner(cand, cand_yr);
      if (fc >= f + opts.armijo * t * g2) {
        pt.r.swap(cand);
        yr.swap(cand_yr);
        f = fc;
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;  // line search stalled at round-off level
    if (opts.record_trace) rep.objective_trace.push_back(f);
  }
  rep.iterations = it;
  rep.objective = f;
  rep.rounded_x = round_rank_one(pt);
  const std::vector<double> yx = y.multiply(rep.rounded_x);
  rep.rounded_objective = frob_inner(rep.rounded_x, yx);
  const DualCheck dual = verify_optimal(y, rep.rounded_x);
  if (dual.feasible) rep.dual_gap = rep.rounded_objective - f;
  return out;
}

SignVector round_rank_one(const FactorPoint& pt) {
  const std::size_t n = pt.n;
  const std::size_t k = pt.k;
  // Leading eigenvector of R R^T is R u with u the leading eigenvector of R^T R.
  SymmetricMatrix gram(k);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a; b < k; ++b) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += pt.r[i * k + a] * pt.r[i * k + b];
      gram.set(a, b, s);
    }
  }
  const Spectrum spec = eig_all(gram, true);
  const std::vector<double> u = spec.vector(k - 1);
  SignVector x(n);
  for (std::size_t i = 0; i < n; ++i) {
    double v = 0.0;
    for (std::size_t c = 0; c < k; ++c) v += pt.r[i * k + c] * u[c];
    x[i] = v >= 0.0 ? 1.0 : -1.0;
  }
  return x;
}

DualCheck verify_optimal(const SymmetricMatrix& y, std::span<const double> x, double tol) {
  const std::vector<double> d = dual_diagonal(y, x);
  SymmetricMatrix m = SymmetricMatrix::diagonal(d);
  m -= y;
  DualCheck c;
  const std::vector<double> yx = y.multiply(x);
  c.gap = 0.0;
  for (double v : d) c.gap += v;
  c.gap -= frob_inner(x, yx);
  if (m.size() == 1) {
    c.lambda1 = m(0, 0);
    c.lambda2 = c.lambda1;
    c.feasible = c.lambda1 >= -tol;
    return c;
  }
  const SpectrumProbe probe(m);
  c.lambda1 = probe.kth_smallest(1);
  c.lambda2 = probe.kth_smallest(2);
  const double scale = std::max(std::abs(c.lambda1), std::abs(probe.largest()));
  c.feasible = c.lambda1 >= -tol * (1.0 + scale);
  return c;
}

bool equal_up_to_sign(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) return false;
  return std::equal(a.begin(), a.end(), b.begin()) ||
         std::equal(a.begin(), a.end(), b.begin(), [](double u, double v) { return u == -v; });
}

CrossCheck solve_and_verify(const SymmetricMatrix& y, const BmOptions& opts, RngStream& rng,
                            std::optional<std::span<const double>> expected) {
  CrossCheck cc;
  cc.result = bm_solve(y, opts, rng);
  cc.recovered = !expected || equal_up_to_sign(cc.result.report.rounded_x, *expected);
  if (!cc.recovered) {
    RngStream fresh = derive_stream(mix64(rng.master_seed()), rng.stream_id());
    cc.result = bm_solve(y, opts, fresh);
    cc.recovered = equal_up_to_sign(cc.result.report.rounded_x, *expected);
    cc.restarted = true;
  }
  cc.dual = verify_optimal(y, cc.result.report.rounded_x);
  return cc;
}

}  // namespace tightcert
