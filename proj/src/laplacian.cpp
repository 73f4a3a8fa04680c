#include "tightcert/laplacian.hpp"

#include <string>

#include "tightcert/error.hpp"
#include "tightcert/kernels.hpp"

namespace tightcert {

namespace {

const SignVector& require_labels(const GraphSample& g) {
  if (!g.labels()) throw Error(ErrorCode::kMissingLabels, "graph carries no planted labels");
  return *g.labels();
}

}  // namespace

SymmetricMatrix laplacian_of(const SymmetricMatrix& x) {
  const std::size_t n = x.size();
  std::vector<double> sums(n);
  kernels::offdiag_row_sums(x, sums);
  SymmetricMatrix l(n);
  for (std::size_t i = 0; i < n; ++i) {
    l.set(i, i, sums[i]);
    for (std::size_t j = i + 1; j < n; ++j) l.set(i, j, -x(i, j));
  }
  return l;
}

SymmetricMatrix adjacency_matrix(const GraphSample& g) {
  const std::size_t n = g.size();
  SymmetricMatrix a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (g.has_edge(i, j)) a.set(i, j, 1.0);
  return a;
}

SymmetricMatrix graph_laplacian(const GraphSample& g) {
  const std::size_t n = g.size();
  SymmetricMatrix l(n);
  for (std::size_t i = 0; i < n; ++i) {
    l.set(i, i, static_cast<double>(g.degree(i)));
    for (std::size_t j = i + 1; j < n; ++j)
      if (g.has_edge(i, j)) l.set(i, j, -1.0);
  }
  return l;
}

SymmetricMatrix centered_neg_laplacian(const GraphSample& g, double p) {
  require_probability(p, "p");
  const std::size_t n = g.size();
  const double expected_degree = static_cast<double>(n - (n > 0 ? 1 : 0)) * p;
  SymmetricMatrix l(n);
  for (std::size_t i = 0; i < n; ++i) {
    l.set(i, i, expected_degree - static_cast<double>(g.degree(i)));
    for (std::size_t j = i + 1; j < n; ++j) l.set(i, j, (g.has_edge(i, j) ? 1.0 : 0.0) - p);
  }
  return l;
}

SymmetricMatrix l_synch(const SyncInstance& inst) {
  if (inst.variant != SyncVariant::kDiscrete) {
    throw Error(ErrorCode::kRequiresDiscreteInstance, "L_Synch is defined for edge-measurement instances");
  }
  const GraphSample& g = inst.g_edges;
  const GraphSample& h = inst.h_edges;
  const std::size_t n = g.size();
  SymmetricMatrix l(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto diag = static_cast<std::int64_t>(g.degree(i)) - 2 * static_cast<std::int64_t>(h.degree(i));
    l.set(i, i, static_cast<double>(diag));
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!g.has_edge(i, j)) {
        if (h.has_edge(i, j)) throw Error(ErrorCode::kInvalidArgument, "H is not a subgraph of G");
        continue;
      }
      l.set(i, j, h.has_edge(i, j) ? 1.0 : -1.0);
    }
  }
  return l;
}

DegreeSplit degree_split(const GraphSample& g) {
  const SignVector& labels = require_labels(g);
  const std::size_t n = g.size();
  DegreeSplit d{std::vector<std::int64_t>(n, 0), std::vector<std::int64_t>(n, 0)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!g.has_edge(i, j)) continue;
      if (labels[i] == labels[j]) {
        ++d.in[i];
      } else {
        ++d.out[i];
      }
    }
  }
  return d;
}

SymmetricMatrix gamma_sbm(const GraphSample& g) {
  const DegreeSplit d = degree_split(g);
  const std::size_t n = g.size();
  SymmetricMatrix gamma(n);
  for (std::size_t i = 0; i < n; ++i) {
    gamma.set(i, i, static_cast<double>(d.in[i] - d.out[i]));
    for (std::size_t j = i + 1; j < n; ++j)
      if (g.has_edge(i, j)) gamma.set(i, j, -1.0);
  }
  return gamma;
}

SymmetricMatrix expected_gamma_sbm(const SignVector& labels, double p, double q) {
  const std::size_t n = labels.size();
  if (n % 2 != 0) throw Error(ErrorCode::kOddDimension, "SBM needs even n, got " + std::to_string(n));
  require_probability(p, "p");
  require_probability(q, "q");
  const double half = static_cast<double>(n / 2);
  SymmetricMatrix e(n);
  for (std::size_t i = 0; i < n; ++i) {
    e.set(i, i, (half - 1.0) * p - half * q);
    for (std::size_t j = i + 1; j < n; ++j) e.set(i, j, labels[i] == labels[j] ? -p : -q);
  }
  return e;
}

SymmetricMatrix signed_adjacency(const GraphSample& g) {
  const std::size_t n = g.size();
  SymmetricMatrix b(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) b.set(i, j, g.has_edge(i, j) ? 1.0 : -1.0);
  return b;
}

}  // namespace tightcert
