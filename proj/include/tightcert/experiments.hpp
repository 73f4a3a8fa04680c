#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tightcert/certificates.hpp"

namespace tightcert {

inline constexpr std::string_view kToolVersion = "0.3.0";

enum class Experiment { kEr, kZ2Gauss, kZ2Er, kSbm, kRatio, kNormBound };

Experiment parse_experiment(std::string_view name);
std::string_view to_string(Experiment e);

// "start:stop:step" (inclusive when stop sits within 1e-9 of a lattice
// point), a comma-separated list, or a single value.
std::vector<double> parse_grid(std::string_view text);

struct SweepConfig {
  Experiment experiment = Experiment::kEr;
  // Axis name -> values. Recognised axes depend on the experiment; see
  // axis_order(). Cells enumerate the present axes in that order.
  std::map<std::string, std::vector<double>> grids;
  std::size_t trials = 1;
  std::uint64_t master_seed = 0;
  std::string out_path;
  std::size_t rank_k = 0;  // 0: default rank for the low-rank cross-check
  double tau_pos = kTauPos;
  bool bm_check = false;
  std::string ensemble = "wigner-neg-laplacian";  // ratio experiment only
  std::size_t spectral_limit = 1000;  // er: spectral connectivity only for n <= limit
  int threads = 0;                    // 0: OpenMP default
};

// Canonical axis order for an experiment (superset; absent axes are skipped).
const std::vector<std::string>& axis_order(Experiment e);

struct CellParams {
  std::size_t n = 0;
  double p = 0.0, q = 0.0, rho = 0.0, alpha = 0.0, beta = 0.0;
  double sigma = 0.0, sigma_factor = 0.0, eps = 0.0;
  double k_const = 0.0, delta = 0.0, t_factor = 0.0, t = 0.0;
};

struct PhaseCell {
  CellParams params;
  std::size_t trials = 0;
  double freq_certified = 0.0;
  double freq_boundary = 0.0;
  double freq_oracle_block = 0.0;
  double freq_connected = 0.0;
  double freq_isolated = 0.0;
  double freq_sufficient = 0.0;
  std::size_t sufficient_violations = 0;
  std::size_t spectral_mismatches = 0;
  std::size_t bm_checked = 0;
  std::size_t bm_violations = 0;
  bool spectral_evaluated = true;
  double mean_ratio = 0.0, median_ratio = 0.0, q95_ratio = 0.0, min_ratio = 0.0, max_ratio = 0.0;
  double c1_surrogate = 0.0;
  std::vector<double> ratios;  // per-trial, trial order (ratio experiment); NaN when skipped
  std::size_t ratio_skipped = 0;
  double freq_bound_holds = 0.0;
  double mean_norm = 0.0;
  double bound = 0.0;
  double predicted_margin = 0.0;
};

struct SweepResult {
  SweepConfig config;
  std::vector<PhaseCell> cells;
  std::string tool_version{kToolVersion};
  double wall_seconds = 0.0;
};

enum class Execution { kParallel, kSerial };

// Validates the config and resolves the cell grid (ConfigError on problems).
std::vector<CellParams> resolve_cells(const SweepConfig& cfg);

SweepResult run_sweep(const SweepConfig& cfg, Execution mode = Execution::kParallel);
SweepResult run_ratio_experiment(const SweepConfig& cfg, Execution mode = Execution::kParallel);

std::vector<std::string> csv_columns(Experiment e);
std::string format_csv(const SweepResult& result);
std::string format_meta_json(const SweepResult& result);
// Writes the CSV and a sibling <stem>.meta.json. IoError on failure.
void write_csv(const SweepResult& result, const std::string& path);
std::string meta_path_for(const std::string& csv_path);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(std::string_view name) const;
  double number(std::size_t row, std::string_view name) const;
};

CsvTable parse_csv(std::string_view text);

// Per-trial stream id: cell_index * 2^32 + trial_index.
std::uint64_t trial_stream_id(std::size_t cell_index, std::size_t trial_index);

}  // namespace tightcert
