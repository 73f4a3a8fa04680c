#include "tightcert/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "tightcert/eigen.hpp"
#include "tightcert/error.hpp"
#include "tightcert/laplacian.hpp"

namespace tightcert {

std::string_view to_string(ThresholdSide side) {
  switch (side) {
    case ThresholdSide::kAbove: return "above";
    case ThresholdSide::kBelow: return "below";
    case ThresholdSide::kBoundary: return "boundary";
  }
  return "boundary";
}

namespace {

void require_signs(std::span<const double> x, std::size_t n) {
  if (x.size() != n) {
    throw Error(ErrorCode::kNonSignVector,
                "sign vector has length " + std::to_string(x.size()) + ", expected " + std::to_string(n));
  }
  if (!is_sign_vector(x)) throw Error(ErrorCode::kNonSignVector, "entries must be +1 or -1");
}

const SignVector& require_labels(const GraphSample& g) {
  if (!g.labels()) throw Error(ErrorCode::kMissingLabels, "graph carries no planted labels");
  return *g.labels();
}

double vec_norm(std::span<const double> v) {
  double s = 0.0;
  for (double a : v) s += a * a;
  return std::sqrt(s);
}

// Classifies lambda2 against the dead band and fills the verdict fields.
void classify(CertificateReport& r, double tau_pos) {
  const double band = tau_pos * (1.0 + r.scale);
  if (r.lambda2 > band) {
    r.side = ThresholdSide::kAbove;
  } else if (r.lambda2 < -band) {
    r.side = ThresholdSide::kBelow;
  } else {
    r.side = ThresholdSide::kBoundary;
  }
  r.tight = r.side == ThresholdSide::kAbove;
}

// Report for the matrix m = D - Y (already formed) and its null vector x.
CertificateReport report_for(const SymmetricMatrix& m, std::vector<double> d, std::span<const double> x,
                             double tau_pos) {
  CertificateReport r;
  r.d_diag = std::move(d);
  r.residual_null = vec_norm(m.multiply(x));
  if (m.size() == 1) {
    // Single feasible point X = [1]; optimal and unique.
    r.lambda1 = m(0, 0);
    r.lambda2 = std::numeric_limits<double>::infinity();
    r.scale = std::abs(m(0, 0));
    r.margin = r.lambda2;
    r.side = ThresholdSide::kAbove;
    r.tight = true;
    return r;
  }
  const SpectrumProbe probe(m);
  r.lambda1 = probe.kth_smallest(1);
  r.lambda2 = probe.kth_smallest(2);
  r.scale = std::max(std::abs(r.lambda1), std::abs(probe.largest()));
  r.margin = r.lambda2;
  classify(r, tau_pos);
  return r;
}

ThresholdSide sign_side(double v) {
  if (v > 0.0) return ThresholdSide::kAbove;
  if (v < 0.0) return ThresholdSide::kBelow;
  return ThresholdSide::kBoundary;
}

}  // namespace

std::vector<double> dual_diagonal(const SymmetricMatrix& y, std::span<const double> x) {
  const std::size_t n = y.size();
  require_signs(x, n);
  std::vector<double> d(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = y.row(i);
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += row[j] * x[j];
    d[i] = s * x[i];
  }
  return d;
}

CertificateReport certify_rank_one(const SymmetricMatrix& y, std::span<const double> x, double tau_pos) {
  std::vector<double> d = dual_diagonal(y, x);
  SymmetricMatrix m = SymmetricMatrix::diagonal(d);
  m -= y;
  return report_for(m, std::move(d), x, tau_pos);
}

CertificateReport certify_z2sync(const SyncInstance& inst, double tau_pos) {
  const std::size_t n = inst.n;
  if (inst.variant == SyncVariant::kDiscrete) {
    const SymmetricMatrix l = l_synch(inst);
    const std::vector<double> ones(n, 1.0);
    return report_for(l, dual_diagonal(inst.y, inst.z), ones, tau_pos);
  }

  CertificateReport r;
  r.d_diag = dual_diagonal(inst.y, inst.z);
  {
    SymmetricMatrix m = SymmetricMatrix::diagonal(r.d_diag);
    m -= inst.y;
    r.residual_null = vec_norm(m.multiply(inst.z));
  }
  const double nn = static_cast<double>(n);
  if (inst.sigma == 0.0 || n == 1) {
    r.lambda1 = 0.0;
    r.lambda2 = n == 1 ? std::numeric_limits<double>::infinity() : nn;
    r.scale = nn;
    r.margin = std::numeric_limits<double>::infinity();
    r.side = ThresholdSide::kAbove;
    r.tight = true;
    return r;
  }
  // -W' = -(diag(z) Y diag(z) - 11^T) / sigma
  SymmetricMatrix neg_w(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      neg_w.set(i, j, -(inst.z[i] * inst.y(i, j) * inst.z[j] - 1.0) / inst.sigma);
  const SpectrumProbe probe(laplacian_of(neg_w));
  const double lam_max = probe.largest();
  const double lam_min = probe.smallest();
  r.lambda1 = 0.0;
  r.lambda2 = nn - inst.sigma * lam_max;
  r.scale = nn + inst.sigma * std::max(std::abs(lam_min), std::abs(lam_max));
  r.margin = nn / inst.sigma - lam_max;
  classify(r, tau_pos);
  return r;
}

CertificateReport certify_sbm(const GraphSample& g, double tau_pos) {
  const SignVector& labels = require_labels(g);
  SymmetricMatrix m = 2.0 * gamma_sbm(g);
  m += SymmetricMatrix::ones(g.size());
  return report_for(m, dual_diagonal(signed_adjacency(g), labels), labels, tau_pos);
}

SufficientCondition sufficient_condition_sbm(const GraphSample& g) {
  const SignVector& labels = require_labels(g);
  const GraphParams& params = g.params();
  if (!params.p || !params.q) throw Error(ErrorCode::kMissingParams, "graph carries no (p, q) parameters");
  const double p = *params.p;
  const double q = *params.q;
  SymmetricMatrix diff = expected_gamma_sbm(labels, p, q);
  diff -= gamma_sbm(g);
  SufficientCondition c;
  c.lhs = SpectrumProbe(diff).largest();
  c.rhs = static_cast<double>(g.size()) / 2.0 * (p - q);
  c.holds = c.lhs < c.rhs;
  return c;
}

bool connectivity_spectral(const GraphSample& g, double tau_pos) {
  const std::size_t n = g.size();
  if (n <= 1) return true;
  return lambda_k(graph_laplacian(g), 2) > tau_pos * static_cast<double>(n);
}

DisjointSets::DisjointSets(std::size_t n) : parent_(n), rank_(n, 0), components_(n) {
  std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t DisjointSets::find(std::size_t v) {
  while (parent_[v] != v) {
    parent_[v] = parent_[parent_[v]];
    v = parent_[v];
  }
  return v;
}

bool DisjointSets::unite(std::size_t a, std::size_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (rank_[a] < rank_[b]) std::swap(a, b);
  parent_[b] = a;
  if (rank_[a] == rank_[b]) ++rank_[a];
  --components_;
  return true;
}

bool connectivity_unionfind(const GraphSample& g) {
  const std::size_t n = g.size();
  if (n <= 1) return true;
  DisjointSets sets(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (g.has_edge(i, j)) sets.unite(i, j);
  return sets.components() == 1;
}

RecoveryVerdict mle_flip_oracle_z2(const SyncInstance& inst) {
  if (inst.variant != SyncVariant::kDiscrete) {
    throw Error(ErrorCode::kRequiresDiscreteInstance, "flip oracle needs an edge-measurement instance");
  }
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (std::size_t i = 0; i < inst.n; ++i) {
    const auto bad = static_cast<std::int64_t>(inst.h_edges.degree(i));
    const auto good = static_cast<std::int64_t>(inst.g_edges.degree(i)) - bad;
    best = std::min(best, good - bad);
  }
  RecoveryVerdict v;
  v.min_stat = inst.n == 0 ? 0.0 : static_cast<double>(best);
  v.oracle_block = v.min_stat < 0.0;
  v.threshold_side = sign_side(v.min_stat);
  return v;
}

RecoveryVerdict degree_diag_oracle_sbm(const GraphSample& g) {
  const DegreeSplit d = degree_split(g);
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (std::size_t i = 0; i < g.size(); ++i) best = std::min(best, d.in[i] - d.out[i]);
  RecoveryVerdict v;
  v.min_stat = g.size() == 0 ? 0.0 : static_cast<double>(best);
  v.oracle_block = v.min_stat < 0.0;
  v.threshold_side = sign_side(v.min_stat);
  return v;
}

RecoveryVerdict assess_z2sync(const SyncInstance& inst, double tau_pos) {
  RecoveryVerdict v = mle_flip_oracle_z2(inst);
  v.certified = certify_z2sync(inst, tau_pos).tight;
  return v;
}

RecoveryVerdict assess_sbm(const GraphSample& g, double tau_pos) {
  RecoveryVerdict v = degree_diag_oracle_sbm(g);
  v.certified = certify_sbm(g, tau_pos).tight;
  return v;
}

MainRatio theorem_main_ratio(const SymmetricMatrix& l) {
  const std::size_t n = l.size();
  const double tol = 1e-9 * static_cast<double>(std::max<std::size_t>(n, 1)) * (1.0 + l.max_abs());
  const std::vector<double> sums = l.row_sums();
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(sums[i]) > tol) {
      throw Error(ErrorCode::kNonLaplacian,
                  "row " + std::to_string(i) + " sums to " + std::to_string(sums[i]));
    }
  }
  MainRatio r;
  r.max_diag = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) r.max_diag = std::max(r.max_diag, l(i, i));
  if (!(r.max_diag > 0.0)) {
    throw Error(ErrorCode::kNonPositiveDiagonalMax, "largest diagonal entry is not positive");
  }
  r.lam_max = SpectrumProbe(l).largest();
  r.ratio = r.lam_max / r.max_diag;
  return r;
}

bool norm_bound_check(const SymmetricMatrix& x, const EnsembleProfile& profile, double t) {
  if (!(t >= 0.0)) throw Error(ErrorCode::kDomainError, "t must be >= 0");
  return spectral_norm(x) <= 3.0 * profile.sigma + t;
}

}  // namespace tightcert
