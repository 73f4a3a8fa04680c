#include "tightcert/tail_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tightcert/error.hpp"

namespace tightcert {

ThresholdModel parse_threshold_model(std::string_view name) {
  if (name == "er" || name == "er_connectivity") return ThresholdModel::kErConnectivity;
  if (name == "z2_gaussian" || name == "z2gauss") return ThresholdModel::kZ2Gaussian;
  if (name == "z2_er" || name == "z2er") return ThresholdModel::kZ2Er;
  if (name == "sbm") return ThresholdModel::kSbm;
  throw Error(ErrorCode::kDomainError, "unknown threshold model '" + std::string(name) + "'");
}

std::string_view to_string(ThresholdModel model) {
  switch (model) {
    case ThresholdModel::kErConnectivity: return "er_connectivity";
    case ThresholdModel::kZ2Gaussian: return "z2_gaussian";
    case ThresholdModel::kZ2Er: return "z2_er";
    case ThresholdModel::kSbm: return "sbm";
  }
  return "sbm";
}

double threshold_margin(const ThresholdQuery& q) {
  switch (q.model) {
    case ThresholdModel::kSbm:
      if (q.alpha < 0.0 || q.beta < 0.0) throw Error(ErrorCode::kDomainError, "alpha, beta must be >= 0");
      return std::sqrt(q.alpha) - std::sqrt(q.beta) - std::sqrt(2.0);
    case ThresholdModel::kErConnectivity:
      return q.rho - 1.0;
    case ThresholdModel::kZ2Gaussian: {
      if (!(q.n >= 2.0)) throw Error(ErrorCode::kDomainError, "n must be >= 2");
      if (q.sigma < 0.0) throw Error(ErrorCode::kDomainError, "sigma must be >= 0");
      return std::sqrt(q.n / (2.0 * std::log(q.n))) - q.sigma;
    }
    case ThresholdModel::kZ2Er: {
      if (!(q.n >= 2.0)) throw Error(ErrorCode::kDomainError, "n must be >= 2");
      if (!(q.p >= 0.0 && q.p <= 1.0)) throw Error(ErrorCode::kDomainError, "p outside [0,1]");
      if (!(q.eps >= 0.0 && q.eps < 0.5)) throw Error(ErrorCode::kDomainError, "eps outside [0,1/2)");
      const double logn = std::log(q.n);
      const double gap = 1.0 - 2.0 * q.eps;
      const double rhs = (1.0 + q.delta) * 2.0 / (gap * gap) *
                         (1.0 + q.k_const / std::sqrt(logn) + 5.0 / 3.0 * gap) * logn;
      return (q.n - 1.0) * q.p - rhs;
    }
  }
  throw Error(ErrorCode::kDomainError, "unknown model");
}

double chernoff_degree_bound(std::size_t n, double rho, double t) {
  if (!(t > 0.0 && t <= 1.0)) throw Error(ErrorCode::kDomainError, "t must lie in (0, 1]");
  if (n < 2) throw Error(ErrorCode::kDomainError, "n must be >= 2");
  if (rho < 0.0) throw Error(ErrorCode::kDomainError, "rho must be >= 0");
  const double nn = static_cast<double>(n);
  const double rate = 1.0 - t - t * std::log(1.0 / t);
  return std::exp(-rate * ((nn - 1.0) / nn) * rho * std::log(nn));
}

double bernstein_bound(double t, std::size_t m, double var_each, double linf_each) {
  if (!(t >= 0.0)) throw Error(ErrorCode::kDomainError, "t must be >= 0");
  if (t == 0.0) return 1.0;
  if (!(var_each > 0.0) || linf_each < 0.0) {
    throw Error(ErrorCode::kDomainError, "need var_each > 0 and linf_each >= 0");
  }
  const double denom = static_cast<double>(m) * var_each + t * linf_each / 3.0;
  return std::exp(-(t * t / 2.0) / denom);
}

std::vector<double> t_distribution(std::size_t m, double p, double q) {
  if (!(p >= 0.0 && p <= 1.0) || !(q >= 0.0 && q <= 1.0)) {
    throw Error(ErrorCode::kDomainError, "p, q must lie in [0,1]");
  }
  const double up = q * (1.0 - p);
  const double down = p * (1.0 - q);
  const double stay = 1.0 - up - down;
  // dist[s + m] = P[S = s]; after j steps the support is [-j, j].
  std::vector<double> dist(2 * m + 1, 0.0), next(2 * m + 1, 0.0);
  dist[m] = 1.0;
  for (std::size_t step = 1; step <= m; ++step) {
    std::fill(next.begin(), next.end(), 0.0);
    const std::size_t lo = m - (step - 1);
    const std::size_t hi = m + (step - 1);
    for (std::size_t s = lo; s <= hi; ++s) {
      const double mass = dist[s];
      if (mass == 0.0) continue;
      next[s + 1] += mass * up;
      next[s - 1] += mass * down;
      next[s] += mass * stay;
    }
    dist.swap(next);
  }
  return dist;
}

double t_exact(std::size_t m, double p, double q, double delta) {
  if (std::isnan(delta)) throw Error(ErrorCode::kDomainError, "delta is NaN");
  const double mm = static_cast<double>(m);
  if (delta <= -mm) return 1.0;
  if (delta > mm) return 0.0;
  const std::vector<double> dist = t_distribution(m, p, q);
  const auto first = static_cast<std::ptrdiff_t>(std::ceil(delta)) + static_cast<std::ptrdiff_t>(m);
  double tail = 0.0;
  for (auto s = static_cast<std::ptrdiff_t>(dist.size()) - 1; s >= first; --s) tail += dist[static_cast<std::size_t>(s)];
  return std::min(tail, 1.0);
}

MonteCarloEstimate t_montecarlo(std::size_t m, double p, double q, double delta, std::size_t trials,
                                RngStream& rng) {
  if (trials < 1) throw Error(ErrorCode::kDomainError, "trials must be >= 1");
  if (!(p >= 0.0 && p <= 1.0) || !(q >= 0.0 && q <= 1.0)) {
    throw Error(ErrorCode::kDomainError, "p, q must lie in [0,1]");
  }
  std::size_t hits = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    long long s = 0;
    for (std::size_t i = 0; i < m; ++i) {
      s += rng.bernoulli(q) ? 1 : 0;
      s -= rng.bernoulli(p) ? 1 : 0;
    }
    if (static_cast<double>(s) >= delta) ++hits;
  }
  MonteCarloEstimate e;
  e.estimate = static_cast<double>(hits) / static_cast<double>(trials);
  e.std_error = std::sqrt(e.estimate * (1.0 - e.estimate) / static_cast<double>(trials));
  return e;
}

Cut greedy_half_cut(const SymmetricMatrix& w) {
  const std::size_t n = w.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (w(i, i) != 0.0) throw Error(ErrorCode::kDomainError, "weights need a zero diagonal");
    for (std::size_t j = 0; j < n; ++j)
      if (w(i, j) < 0.0) throw Error(ErrorCode::kDomainError, "negative weight");
  }
  std::vector<int> side(n, -1);
  Cut cut;
  for (std::size_t v = 0; v < n; ++v) {
    double to0 = 0.0, to1 = 0.0;
    for (std::size_t u = 0; u < v; ++u) {
      if (side[u] == 0) to0 += w(v, u);
      else to1 += w(v, u);
      cut.total += w(v, u);
    }
    // Joining side 1 cuts the weight to side 0, and vice versa.
    side[v] = to0 > to1 ? 1 : 0;
    cut.weight += std::max(to0, to1);
  }
  std::vector<std::size_t> s0, s1;
  for (std::size_t v = 0; v < n; ++v) (side[v] == 0 ? s0 : s1).push_back(v);
  if (s0.size() >= s1.size()) {
    cut.larger_side = std::move(s0);
    cut.smaller_side = std::move(s1);
  } else {
    cut.larger_side = std::move(s1);
    cut.smaller_side = std::move(s0);
  }
  return cut;
}

VarianceSets build_variance_sets(const SymmetricMatrix& w, double sigma2) {
  const std::size_t n = w.size();
  if (!(sigma2 >= 0.0)) throw Error(ErrorCode::kDomainError, "sigma2 must be >= 0");
  const double tol = 1e-9 * std::max(1.0, std::abs(sigma2));
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) s += w(i, j);
    if (std::abs(s - sigma2) > tol) {
      throw Error(ErrorCode::kUnequalRowSums, "row " + std::to_string(i) + " sums to " +
                                                  std::to_string(s) + ", expected " + std::to_string(sigma2));
    }
  }
  Cut cut = greedy_half_cut(w);
  VarianceSets sets;
  sets.j_set = cut.smaller_side;
  for (std::size_t i : cut.larger_side) {
    double s = 0.0;
    for (std::size_t j : sets.j_set) s += w(i, j);
    if (s >= sigma2 / 8.0 - tol) sets.i_set.push_back(i);
  }
  return sets;
}

}  // namespace tightcert
