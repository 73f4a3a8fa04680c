#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "tightcert/symmetric_matrix.hpp"

namespace tightcert {

// Deterministic uniform stream keyed by (master_seed, stream_id). Single owner;
// parallel trials each derive their own.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_id);

  std::uint64_t master_seed() const noexcept { return master_seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  std::uint64_t next_u64() { return engine_(); }
  double uniform();       // [0, 1), 53-bit resolution
  bool bernoulli(double p) { return uniform() < p; }
  double normal();        // Marsaglia polar method
  std::size_t index(std::size_t n);  // uniform in [0, n)

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  std::optional<double> spare_normal_;
};

std::uint64_t mix64(std::uint64_t x) noexcept;
RngStream derive_stream(std::uint64_t master_seed, std::uint64_t stream_id);

struct GraphParams {
  std::string ensemble;  // "er", "sbm", or "" for hand-built graphs
  std::optional<double> p;
  std::optional<double> q;

  friend bool operator==(const GraphParams&, const GraphParams&) = default;
};

// Simple undirected graph on n nodes with dense 0/1 adjacency.
class GraphSample {
 public:
  GraphSample() = default;
  explicit GraphSample(std::size_t n);

  static GraphSample from_edges(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges);
  static GraphSample complete(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  bool has_edge(std::size_t i, std::size_t j) const noexcept { return adj_[i * n_ + j] != 0; }
  void add_edge(std::size_t i, std::size_t j);
  std::size_t degree(std::size_t i) const noexcept { return degree_[i]; }
  std::size_t edge_count() const noexcept { return edges_; }
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;

  const std::optional<SignVector>& labels() const noexcept { return labels_; }
  void set_labels(SignVector labels);
  const GraphParams& params() const noexcept { return params_; }
  void set_params(GraphParams params) { params_ = std::move(params); }

  friend bool operator==(const GraphSample&, const GraphSample&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint8_t> adj_;
  std::vector<std::size_t> degree_;
  std::size_t edges_ = 0;
  std::optional<SignVector> labels_;
  GraphParams params_;
};

enum class SyncVariant { kDiscrete, kGaussian };

struct SyncInstance {
  SyncVariant variant = SyncVariant::kDiscrete;
  std::size_t n = 0;
  SymmetricMatrix y;
  SignVector z;
  GraphSample g_edges;  // measurement graph
  GraphSample h_edges;  // corrupted measurements, subgraph of g_edges
  double p = 0.0;
  double eps = 0.0;
  double sigma = 0.0;
};

struct EnsembleProfile {
  double sigma = 0.0;      // sqrt(max_i sum_{j != i} E L_ij^2)
  double sigma_inf = 0.0;  // max_{i != j} ess sup |L_ij - E L_ij|; +inf for Gaussian
  std::size_t n = 0;

  bool bounded() const noexcept;
};

// Centered ensembles understood by profile_of: "wigner", "centered-er" (p),
// "centered-sbm" (p, q), "centered-z2er" (p, eps).
struct EnsembleSpec {
  std::string name;
  double p = 0.0;
  double q = 0.0;
  double eps = 0.0;
};

SymmetricMatrix sample_wigner(std::size_t n, RngStream& rng);
GraphSample sample_er(std::size_t n, double p, RngStream& rng);
GraphSample sample_sbm(std::size_t n, double p, double q, RngStream& rng);
SyncInstance sample_z2sync_er(std::size_t n, double p, double eps, const SignVector& z, RngStream& rng);
SyncInstance sample_z2sync_gaussian(std::size_t n, double sigma, const SignVector& z, RngStream& rng);

// Planted labels: +1 on the first n/2 nodes, -1 on the rest.
SignVector planted_labels(std::size_t n);

EnsembleProfile profile_of(const EnsembleSpec& spec, std::size_t n);

void require_probability(double p, const char* name);

}  // namespace tightcert
