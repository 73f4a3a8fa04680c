#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "tightcert/ensembles.hpp"
#include "tightcert/symmetric_matrix.hpp"

namespace tightcert {

// Dead band for the strict positivity tests, relative to (1 + |D - Y|).
inline constexpr double kTauPos = 1e-9;

enum class ThresholdSide { kAbove, kBelow, kBoundary };

std::string_view to_string(ThresholdSide side);

// Outcome of the rank-one dual certificate for max x^T Y x over X_ii = 1, X psd.
struct CertificateReport {
  std::vector<double> d_diag;  // D_ii = sum_j Y_ij x_i x_j
  double lambda1 = 0.0;        // of D - Y
  double lambda2 = 0.0;
  double residual_null = 0.0;  // |(D - Y) x|
  double scale = 0.0;          // |D - Y| used by the dead band
  bool tight = false;          // lambda2 above the dead band: x x^T is the unique optimum
  double margin = 0.0;
  ThresholdSide side = ThresholdSide::kBoundary;
};

struct RecoveryVerdict {
  std::optional<bool> certified;  // filled by the assess_* helpers only
  bool oracle_block = false;
  double min_stat = 0.0;
  ThresholdSide threshold_side = ThresholdSide::kBoundary;
};

struct SufficientCondition {
  double lhs = 0.0;  // lambda_max(E[Gamma] - Gamma)
  double rhs = 0.0;  // (n/2)(p - q)
  bool holds = false;
};

struct MainRatio {
  double ratio = 0.0;
  double max_diag = 0.0;
  double lam_max = 0.0;
};

std::vector<double> dual_diagonal(const SymmetricMatrix& y, std::span<const double> x);

CertificateReport certify_rank_one(const SymmetricMatrix& y, std::span<const double> x,
                                   double tau_pos = kTauPos);

// Discrete instances are certified on L_Synch; Gaussian instances compare
// lambda_max(L_[-W]) with n / sigma, where W is the noise conjugated by z.
CertificateReport certify_z2sync(const SyncInstance& inst, double tau_pos = kTauPos);

// Certificate on 2 Gamma_SBM + 11^T with x = labels.
CertificateReport certify_sbm(const GraphSample& g, double tau_pos = kTauPos);

SufficientCondition sufficient_condition_sbm(const GraphSample& g);

bool connectivity_spectral(const GraphSample& g, double tau_pos = kTauPos);
bool connectivity_unionfind(const GraphSample& g);

RecoveryVerdict mle_flip_oracle_z2(const SyncInstance& inst);
RecoveryVerdict degree_diag_oracle_sbm(const GraphSample& g);

// Oracle plus certificate in one verdict.
RecoveryVerdict assess_z2sync(const SyncInstance& inst, double tau_pos = kTauPos);
RecoveryVerdict assess_sbm(const GraphSample& g, double tau_pos = kTauPos);

// lambda_max(L) / max_i L_ii for a Laplacian (zero row sums).
MainRatio theorem_main_ratio(const SymmetricMatrix& l);

// |X| <= 3 sigma + t with sigma taken from the ensemble profile.
bool norm_bound_check(const SymmetricMatrix& x, const EnsembleProfile& profile, double t);

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n);
  std::size_t find(std::size_t v);
  bool unite(std::size_t a, std::size_t b);
  std::size_t components() const noexcept { return components_; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> rank_;
  std::size_t components_;
};

}  // namespace tightcert
