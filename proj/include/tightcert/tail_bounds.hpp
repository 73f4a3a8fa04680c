#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "tightcert/ensembles.hpp"
#include "tightcert/symmetric_matrix.hpp"

namespace tightcert {

enum class ThresholdModel { kErConnectivity, kZ2Gaussian, kZ2Er, kSbm };

ThresholdModel parse_threshold_model(std::string_view name);
std::string_view to_string(ThresholdModel model);

struct ThresholdQuery {
  ThresholdModel model = ThresholdModel::kSbm;
  double n = 0.0;
  double rho = 0.0;    // er: p = rho log n / n
  double sigma = 0.0;  // z2 gaussian
  double p = 0.0;      // z2 er
  double eps = 0.0;    // z2 er
  double alpha = 0.0;  // sbm: p = alpha log n / n
  double beta = 0.0;   // sbm: q = beta log n / n
  double k_const = 0.0;
  double delta = 0.0;
};

// Signed distance to the predicted threshold; positive predicts success.
double threshold_margin(const ThresholdQuery& q);

// Lower-tail Chernoff bound on P[deg(i) < t E deg(i)] in ER(n, rho log n / n).
double chernoff_degree_bound(std::size_t n, double rho, double t);

// exp(-(t^2/2) / (m var + t linf / 3)).
double bernstein_bound(double t, std::size_t m, double var_each, double linf_each);

// Law of S = sum_{i<=m} (Z_i - W_i), Z ~ Bernoulli(q), W ~ Bernoulli(p);
// entry s + m holds P[S = s].
std::vector<double> t_distribution(std::size_t m, double p, double q);

// P[S >= delta] = P[S >= ceil(delta)].
double t_exact(std::size_t m, double p, double q, double delta);

struct MonteCarloEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

MonteCarloEstimate t_montecarlo(std::size_t m, double p, double q, double delta, std::size_t trials,
                                RngStream& rng);

struct Cut {
  std::vector<std::size_t> larger_side;   // S, |S| >= n/2
  std::vector<std::size_t> smaller_side;  // complement
  double weight = 0.0;
  double total = 0.0;  // sum_{i<j} w_ij
};

// Greedy max-cut: nodes join, in index order, the side that cuts more weight
// to already placed nodes (ties to side 0).
Cut greedy_half_cut(const SymmetricMatrix& weights);

struct VarianceSets {
  std::vector<std::size_t> i_set;
  std::vector<std::size_t> j_set;
};

// J = complement side of the greedy cut; I = {i in S : sum_{j in J} w_ij >= sigma2 / 8}.
VarianceSets build_variance_sets(const SymmetricMatrix& var_matrix, double sigma2);

}  // namespace tightcert
