#include "tightcert/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <string>

#include "tightcert/error.hpp"

namespace tightcert {

std::uint64_t mix64(std::uint64_t x) noexcept {
  // splitmix64 finalizer
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
    : master_seed_(master_seed),
      stream_id_(stream_id),
      engine_(mix64(master_seed ^ mix64(stream_id ^ 0xD1B54A32D192ED03ULL))) {}

double RngStream::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double RngStream::normal() {
  if (spare_normal_) {
    const double v = *spare_normal_;
    spare_normal_.reset();
    return v;
  }
  double u = 0.0, v = 0.0, s = 0.0;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_normal_ = v * f;
  return u * f;
}

std::size_t RngStream::index(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "index(0)");
  // Rejection keeps the result exactly uniform.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x = 0;
  do {
    x = engine_();
  } while (x >= limit);
  return static_cast<std::size_t>(x % n);
}

RngStream derive_stream(std::uint64_t master_seed, std::uint64_t stream_id) {
  return RngStream(master_seed, stream_id);
}

void require_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::kInvalidProbability, std::string(name) + "=" + std::to_string(p) +
                                                    " outside [0,1]");
  }
}

GraphSample::GraphSample(std::size_t n) : n_(n), adj_(n * n, 0), degree_(n, 0) {}

GraphSample GraphSample::from_edges(std::size_t n,
                                    const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  GraphSample g(n);
  for (const auto& [i, j] : edges) g.add_edge(i, j);
  return g;
}

GraphSample GraphSample::complete(std::size_t n) {
  GraphSample g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

void GraphSample::add_edge(std::size_t i, std::size_t j) {
  if (i >= n_ || j >= n_) throw Error(ErrorCode::kIndexOutOfRange, "edge endpoint");
  if (i == j) throw Error(ErrorCode::kInvalidArgument, "self-loops are not allowed");
  if (adj_[i * n_ + j] != 0) return;
  adj_[i * n_ + j] = 1;
  adj_[j * n_ + i] = 1;
  ++degree_[i];
  ++degree_[j];
  ++edges_;
}

std::vector<std::pair<std::size_t, std::size_t>> GraphSample::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  out.reserve(edges_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      if (has_edge(i, j)) out.emplace_back(i, j);
  return out;
}

void GraphSample::set_labels(SignVector labels) {
  if (labels.size() != n_) throw Error(ErrorCode::kInvalidArgument, "label length mismatch");
  if (!is_sign_vector(labels)) throw Error(ErrorCode::kNonSignVector, "labels must be +-1");
  if (n_ % 2 != 0) throw Error(ErrorCode::kOddDimension, "labelled graphs need even n");
  const auto plus = std::count(labels.begin(), labels.end(), 1.0);
  if (static_cast<std::size_t>(plus) * 2 != n_) {
    throw Error(ErrorCode::kInvalidArgument, "labels must be balanced");
  }
  labels_ = std::move(labels);
}

bool EnsembleProfile::bounded() const noexcept { return std::isfinite(sigma_inf); }

SignVector planted_labels(std::size_t n) {
  SignVector g(n, -1.0);
  for (std::size_t i = 0; i < n / 2; ++i) g[i] = 1.0;
  return g;
}

SymmetricMatrix sample_wigner(std::size_t n, RngStream& rng) {
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "n must be positive");
  SymmetricMatrix w(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) w.set(i, j, rng.normal());
  return w;
}

GraphSample sample_er(std::size_t n, double p, RngStream& rng) {
  require_probability(p, "p");
  GraphSample g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (rng.bernoulli(p)) g.add_edge(i, j);
  g.set_params({"er", p, std::nullopt});
  return g;
}

GraphSample sample_sbm(std::size_t n, double p, double q, RngStream& rng) {
  if (n % 2 != 0) throw Error(ErrorCode::kOddDimension, "SBM needs even n, got " + std::to_string(n));
  require_probability(p, "p");
  require_probability(q, "q");
  const std::size_t half = n / 2;
  GraphSample g(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool same = (i < half) == (j < half);
      if (rng.bernoulli(same ? p : q)) g.add_edge(i, j);
    }
  }
  g.set_labels(planted_labels(n));
  g.set_params({"sbm", p, q});
  return g;
}

SyncInstance sample_z2sync_er(std::size_t n, double p, double eps, const SignVector& z, RngStream& rng) {
  require_probability(p, "p");
  if (!(eps >= 0.0 && eps < 0.5)) {
    throw Error(ErrorCode::kInvalidProbability, "eps=" + std::to_string(eps) + " outside [0,1/2)");
  }
  if (z.size() != n || !is_sign_vector(z)) throw Error(ErrorCode::kNonSignVector, "z must be +-1 of length n");
  SyncInstance inst;
  inst.variant = SyncVariant::kDiscrete;
  inst.n = n;
  inst.z = z;
  inst.p = p;
  inst.eps = eps;
  inst.y = SymmetricMatrix(n);
  inst.g_edges = GraphSample(n);
  inst.h_edges = GraphSample(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!rng.bernoulli(p)) continue;
      inst.g_edges.add_edge(i, j);
      const bool corrupted = rng.bernoulli(eps);
      if (corrupted) inst.h_edges.add_edge(i, j);
      inst.y.set(i, j, corrupted ? -z[i] * z[j] : z[i] * z[j]);
    }
  }
  return inst;
}

SyncInstance sample_z2sync_gaussian(std::size_t n, double sigma, const SignVector& z, RngStream& rng) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorCode::kInvalidArgument, "sigma must be finite and >= 0");
  }
  if (z.size() != n || !is_sign_vector(z)) throw Error(ErrorCode::kNonSignVector, "z must be +-1 of length n");
  SyncInstance inst;
  inst.variant = SyncVariant::kGaussian;
  inst.n = n;
  inst.z = z;
  inst.sigma = sigma;
  inst.y = SymmetricMatrix::outer(z);
  const SymmetricMatrix w = sample_wigner(n, rng);
  if (sigma > 0.0) inst.y += sigma * w;
  inst.g_edges = GraphSample::complete(n);
  inst.h_edges = GraphSample(n);
  return inst;
}

namespace {

struct Atom {
  double value;
  double prob;
};

// ess sup of |X - E X| for a finite distribution.
double deviation_sup(std::initializer_list<Atom> atoms) {
  double mean = 0.0;
  for (const Atom& a : atoms) mean += a.value * a.prob;
  double sup = 0.0;
  for (const Atom& a : atoms)
    if (a.prob > 0.0) sup = std::max(sup, std::abs(a.value - mean));
  return sup;
}

}  // namespace

EnsembleProfile profile_of(const EnsembleSpec& spec, std::size_t n) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "n must be positive");
  const double nn = static_cast<double>(n);
  EnsembleProfile prof;
  prof.n = n;
  if (spec.name == "wigner") {
    prof.sigma = std::sqrt(nn - 1.0);
    prof.sigma_inf = std::numeric_limits<double>::infinity();
  } else if (spec.name == "centered-er") {
    require_probability(spec.p, "p");
    const double p = spec.p;
    prof.sigma = std::sqrt((nn - 1.0) * p * (1.0 - p));
    prof.sigma_inf = deviation_sup({{1.0, p}, {0.0, 1.0 - p}});
  } else if (spec.name == "centered-sbm") {
    require_probability(spec.p, "p");
    require_probability(spec.q, "q");
    if (n % 2 != 0) throw Error(ErrorCode::kOddDimension, "SBM needs even n");
    const double p = spec.p, q = spec.q;
    const double var = (nn / 2.0 - 1.0) * (p - p * p) + (nn / 2.0) * (q - q * q);
    prof.sigma = std::sqrt(std::max(0.0, var));
    prof.sigma_inf = std::max(n > 2 ? deviation_sup({{1.0, p}, {0.0, 1.0 - p}}) : 0.0,
                              deviation_sup({{1.0, q}, {0.0, 1.0 - q}}));
  } else if (spec.name == "centered-z2er") {
    require_probability(spec.p, "p");
    if (!(spec.eps >= 0.0 && spec.eps < 0.5)) throw Error(ErrorCode::kInvalidProbability, "eps outside [0,1/2)");
    const double p = spec.p, e = spec.eps;
    const double drift = p * (1.0 - 2.0 * e);
    prof.sigma = std::sqrt(std::max(0.0, (nn - 1.0) * (p - drift * drift)));
    prof.sigma_inf = deviation_sup({{1.0, p * (1.0 - e)}, {-1.0, p * e}, {0.0, 1.0 - p}});
  } else {
    throw Error(ErrorCode::kUnknownEnsemble, "unknown ensemble '" + spec.name + "'");
  }
  return prof;
}

}  // namespace tightcert
