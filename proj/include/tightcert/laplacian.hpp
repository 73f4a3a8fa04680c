#pragma once

#include <cstdint>
#include <vector>

#include "tightcert/ensembles.hpp"
#include "tightcert/symmetric_matrix.hpp"

namespace tightcert {

struct DegreeSplit {
  std::vector<std::int64_t> in;   // same-cluster neighbours
  std::vector<std::int64_t> out;  // cross-cluster neighbours
};

// L_X = D_X - X with (D_X)_ii = sum_j X_ij; the diagonal of x cancels.
SymmetricMatrix laplacian_of(const SymmetricMatrix& x);

SymmetricMatrix adjacency_matrix(const GraphSample& g);
SymmetricMatrix graph_laplacian(const GraphSample& g);

// E[L_G] - L_G for G ~ ER(n, p).
SymmetricMatrix centered_neg_laplacian(const GraphSample& g, double p);

// L_G - 2 L_H for a discrete synchronization instance.
SymmetricMatrix l_synch(const SyncInstance& inst);

// D_+ - D_- - A with D_+/D_- the inner/outer degree diagonals.
SymmetricMatrix gamma_sbm(const GraphSample& g);

// E[Gamma_SBM] for the balanced two-community model with parameters (p, q)
// and the given balanced labels.
SymmetricMatrix expected_gamma_sbm(const SignVector& labels, double p, double q);

// B_ij = +1 on edges, -1 on non-edges (i != j), 0 on the diagonal.
SymmetricMatrix signed_adjacency(const GraphSample& g);

DegreeSplit degree_split(const GraphSample& g);

}  // namespace tightcert
