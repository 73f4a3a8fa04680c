#include "tightcert/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "tightcert/eigen.hpp"
#include "tightcert/error.hpp"
#include "tightcert/laplacian.hpp"
#include "tightcert/sdp_lowrank.hpp"
#include "tightcert/tail_bounds.hpp"

namespace tightcert {

Experiment parse_experiment(std::string_view name) {
  if (name == "er") return Experiment::kEr;
  if (name == "z2gauss") return Experiment::kZ2Gauss;
  if (name == "z2er") return Experiment::kZ2Er;
  if (name == "sbm") return Experiment::kSbm;
  if (name == "ratio") return Experiment::kRatio;
  if (name == "normbound") return Experiment::kNormBound;
  throw Error(ErrorCode::kConfigError, "unknown experiment '" + std::string(name) + "'");
}

std::string_view to_string(Experiment e) {
  switch (e) {
    case Experiment::kEr: return "er";
    case Experiment::kZ2Gauss: return "z2gauss";
    case Experiment::kZ2Er: return "z2er";
    case Experiment::kSbm: return "sbm";
    case Experiment::kRatio: return "ratio";
    case Experiment::kNormBound: return "normbound";
  }
  return "er";
}

namespace {

double parse_number(std::string_view text) {
  const std::string s(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw Error(ErrorCode::kConfigError, "not a number: '" + s + "'");
  }
  if (used != s.size() || !std::isfinite(v)) throw Error(ErrorCode::kConfigError, "not a number: '" + s + "'");
  return v;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

std::vector<double> parse_grid(std::string_view text) {
  const std::string t = trim(text);
  if (t.empty()) throw Error(ErrorCode::kConfigError, "empty grid");
  std::vector<double> out;
  if (t.find(',') != std::string::npos) {
    std::stringstream ss(t);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_number(trim(item)));
    return out;
  }
  const auto c1 = t.find(':');
  if (c1 == std::string::npos) return {parse_number(t)};
  const auto c2 = t.find(':', c1 + 1);
  if (c2 == std::string::npos) throw Error(ErrorCode::kConfigError, "grid needs start:stop:step, got '" + t + "'");
  const double start = parse_number(t.substr(0, c1));
  const double stop = parse_number(t.substr(c1 + 1, c2 - c1 - 1));
  const double step = parse_number(t.substr(c2 + 1));
  if (!(step > 0.0)) throw Error(ErrorCode::kConfigError, "grid step must be > 0 in '" + t + "'");
  if (stop < start) throw Error(ErrorCode::kConfigError, "grid stop below start in '" + t + "'");
  const double span = (stop - start) / step;
  auto count = static_cast<std::size_t>(std::floor(span + 1e-9));
  for (std::size_t i = 0; i <= count; ++i) out.push_back(start + static_cast<double>(i) * step);
  // Land exactly on stop when it is a lattice point.
  if (std::abs(out.back() - stop) <= 1e-9 * std::max(1.0, std::abs(stop))) out.back() = stop;
  return out;
}

const std::vector<std::string>& axis_order(Experiment e) {
  static const std::vector<std::string> er{"n", "p", "rho"};
  static const std::vector<std::string> sbm{"n", "alpha", "beta", "p", "q"};
  static const std::vector<std::string> z2gauss{"n", "sigma", "sigma-factor"};
  static const std::vector<std::string> z2er{"n", "p", "eps", "K", "delta"};
  static const std::vector<std::string> ratio{"n", "rho", "alpha", "beta"};
  static const std::vector<std::string> normbound{"n", "p", "t-factor"};
  switch (e) {
    case Experiment::kEr: return er;
    case Experiment::kSbm: return sbm;
    case Experiment::kZ2Gauss: return z2gauss;
    case Experiment::kZ2Er: return z2er;
    case Experiment::kRatio: return ratio;
    case Experiment::kNormBound: return normbound;
  }
  return er;
}

std::uint64_t trial_stream_id(std::size_t cell_index, std::size_t trial_index) {
  return (static_cast<std::uint64_t>(cell_index) << 32) + static_cast<std::uint64_t>(trial_index);
}

namespace {

double log_n(std::size_t n) { return std::log(static_cast<double>(n)); }

double sigma_star(std::size_t n) { return std::sqrt(static_cast<double>(n) / (2.0 * log_n(n))); }

[[noreturn]] void config_error(const std::string& msg) { throw Error(ErrorCode::kConfigError, msg); }

double scaled_probability(double c, std::size_t n, const char* name) {
  const double p = c * log_n(n) / static_cast<double>(n);
  if (!(p >= 0.0 && p <= 1.0)) {
    config_error(std::string(name) + " log n / n = " + std::to_string(p) + " is not a probability at n=" +
                 std::to_string(n));
  }
  return p;
}

double inverse_scale(double p, std::size_t n) {
  return n >= 2 ? p * static_cast<double>(n) / log_n(n) : 0.0;
}

void check_probability_axis(const std::map<std::string, std::vector<double>>& grids, const std::string& name) {
  auto it = grids.find(name);
  if (it == grids.end()) return;
  for (double v : it->second)
    if (!(v >= 0.0 && v <= 1.0)) config_error("--" + name + " value " + std::to_string(v) + " outside [0,1]");
}

void finish_cell(Experiment e, const SweepConfig& cfg, CellParams& c) {
  const std::size_t n = c.n;
  switch (e) {
    case Experiment::kEr:
      if (cfg.grids.count("rho")) {
        c.p = n >= 2 ? std::min(1.0, scaled_probability(c.rho, n, "rho")) : 0.0;
      } else {
        c.rho = inverse_scale(c.p, n);
      }
      break;
    case Experiment::kSbm:
      if (n % 2 != 0) config_error("--n must be even for sbm, got " + std::to_string(n));
      if (cfg.grids.count("alpha")) {
        c.p = scaled_probability(c.alpha, n, "alpha");
        c.q = scaled_probability(c.beta, n, "beta");
      } else {
        c.alpha = inverse_scale(c.p, n);
        c.beta = inverse_scale(c.q, n);
      }
      break;
    case Experiment::kZ2Gauss:
      if (n < 2) config_error("--n must be >= 2 for z2gauss");
      if (cfg.grids.count("sigma-factor")) {
        c.sigma = c.sigma_factor * sigma_star(n);
      } else {
        c.sigma_factor = c.sigma / sigma_star(n);
      }
      if (c.sigma < 0.0) config_error("sigma must be >= 0");
      break;
    case Experiment::kZ2Er:
      if (!(c.eps >= 0.0 && c.eps < 0.5)) config_error("--eps must lie in [0, 0.5)");
      break;
    case Experiment::kRatio:
      if (cfg.ensemble == "centered-er") {
        c.p = scaled_probability(c.rho, n, "rho");
      } else if (cfg.ensemble == "centered-sbm") {
        if (n % 2 != 0) config_error("--n must be even for centered-sbm");
        c.p = scaled_probability(c.alpha, n, "alpha");
        c.q = scaled_probability(c.beta, n, "beta");
      }
      break;
    case Experiment::kNormBound: {
      const EnsembleProfile prof = profile_of({"centered-er", c.p, 0.0, 0.0}, n);
      c.t = c.t_factor * prof.sigma_inf * std::sqrt(log_n(n));
      break;
    }
  }
}

double predicted_margin(Experiment e, const CellParams& c) {
  ThresholdQuery q;
  q.n = static_cast<double>(c.n);
  switch (e) {
    case Experiment::kEr:
      q.model = ThresholdModel::kErConnectivity;
      q.rho = c.rho;
      return threshold_margin(q);
    case Experiment::kSbm:
      q.model = ThresholdModel::kSbm;
      q.alpha = c.alpha;
      q.beta = c.beta;
      return threshold_margin(q);
    case Experiment::kZ2Gauss:
      q.model = ThresholdModel::kZ2Gaussian;
      q.sigma = c.sigma;
      return threshold_margin(q);
    case Experiment::kZ2Er:
      if (c.n < 2) return std::numeric_limits<double>::quiet_NaN();
      q.model = ThresholdModel::kZ2Er;
      q.p = c.p;
      q.eps = c.eps;
      q.k_const = c.k_const;
      q.delta = c.delta;
      return threshold_margin(q);
    case Experiment::kRatio:
    case Experiment::kNormBound:
      return std::numeric_limits<double>::quiet_NaN();
  }
  return std::numeric_limits<double>::quiet_NaN();
}

void set_axis(CellParams& c, const std::string& axis, double v) {
  if (axis == "n") {
    if (!(v >= 1.0) || v != std::floor(v)) config_error("--n must be a positive integer, got " + std::to_string(v));
    c.n = static_cast<std::size_t>(v);
  } else if (axis == "p") {
    c.p = v;
  } else if (axis == "q") {
    c.q = v;
  } else if (axis == "rho") {
    c.rho = v;
  } else if (axis == "alpha") {
    c.alpha = v;
  } else if (axis == "beta") {
    c.beta = v;
  } else if (axis == "sigma") {
    c.sigma = v;
  } else if (axis == "sigma-factor") {
    c.sigma_factor = v;
  } else if (axis == "eps") {
    c.eps = v;
  } else if (axis == "K") {
    c.k_const = v;
  } else if (axis == "delta") {
    c.delta = v;
  } else if (axis == "t-factor") {
    c.t_factor = v;
  }
}

void validate(const SweepConfig& cfg) {
  if (cfg.trials < 1) config_error("--trials must be >= 1");
  if (!(cfg.tau_pos > 0.0)) config_error("--tau-pos must be > 0");
  const auto& order = axis_order(cfg.experiment);
  for (const auto& [name, values] : cfg.grids) {
    if (std::find(order.begin(), order.end(), name) == order.end()) {
      config_error("--" + name + " is not a parameter of experiment " + std::string(to_string(cfg.experiment)));
    }
    if (values.empty()) config_error("--" + name + " grid is empty");
  }
  auto has = [&](const char* a) { return cfg.grids.count(a) > 0; };
  auto require = [&](const char* a) {
    if (!has(a)) config_error("missing --" + std::string(a) + " for experiment " + std::string(to_string(cfg.experiment)));
  };
  auto exclusive = [&](const char* a, const char* b) {
    if (has(a) == has(b)) config_error("exactly one of --" + std::string(a) + " and --" + std::string(b) + " is required");
  };
  require("n");
  switch (cfg.experiment) {
    case Experiment::kEr:
      exclusive("p", "rho");
      check_probability_axis(cfg.grids, "p");
      break;
    case Experiment::kSbm:
      if (has("alpha") || has("beta")) {
        require("alpha");
        require("beta");
        if (has("p") || has("q")) config_error("--alpha/--beta cannot be combined with --p/--q");
      } else {
        require("p");
        require("q");
      }
      check_probability_axis(cfg.grids, "p");
      check_probability_axis(cfg.grids, "q");
      break;
    case Experiment::kZ2Gauss:
      exclusive("sigma", "sigma-factor");
      break;
    case Experiment::kZ2Er:
      require("p");
      require("eps");
      check_probability_axis(cfg.grids, "p");
      break;
    case Experiment::kRatio:
      if (cfg.ensemble == "centered-er") {
        require("rho");
      } else if (cfg.ensemble == "centered-sbm") {
        require("alpha");
        require("beta");
      } else if (cfg.ensemble != "wigner-neg-laplacian") {
        config_error("--ensemble must be wigner-neg-laplacian, centered-er or centered-sbm, got '" + cfg.ensemble + "'");
      }
      break;
    case Experiment::kNormBound:
      require("p");
      check_probability_axis(cfg.grids, "p");
      break;
  }
}

struct TrialOutcome {
  bool certified = false;
  bool boundary = false;
  bool oracle_block = false;
  bool connected = false;
  bool isolated = false;
  bool sufficient = false;
  bool sufficient_violation = false;
  bool spectral_mismatch = false;
  bool bm_checked = false;
  bool bm_violation = false;
  bool bound_holds = false;
  double value = 0.0;  // ratio or norm
};

SignVector random_signs(std::size_t n, RngStream& rng) {
  SignVector z(n);
  for (double& v : z) v = (rng.next_u64() >> 63) != 0 ? 1.0 : -1.0;
  return z;
}

void record_certificate(const CertificateReport& rep, TrialOutcome& out) {
  out.certified = rep.tight;
  out.boundary = rep.side == ThresholdSide::kBoundary;
}

void maybe_cross_check(const SweepConfig& cfg, const CertificateReport& rep, const SymmetricMatrix& y,
                       const SignVector& truth, RngStream& rng, TrialOutcome& out) {
  const double n = static_cast<double>(y.size());
  if (!cfg.bm_check || !rep.tight || !(rep.margin > 1e-6 * n)) return;
  BmOptions opts;
  opts.rank = cfg.rank_k;
  const CrossCheck cc = solve_and_verify(y, opts, rng, std::span<const double>(truth));
  out.bm_checked = true;
  out.bm_violation = !cc.recovered || !cc.dual.feasible;
}

TrialOutcome run_trial(const SweepConfig& cfg, const CellParams& c, RngStream& rng) {
  TrialOutcome out;
  const std::size_t n = c.n;
  switch (cfg.experiment) {
    case Experiment::kEr: {
      const GraphSample g = sample_er(n, c.p, rng);
      out.connected = connectivity_unionfind(g);
      for (std::size_t i = 0; i < n; ++i)
        if (g.degree(i) == 0) out.isolated = true;
      if (n <= cfg.spectral_limit) {
        const double band = cfg.tau_pos * static_cast<double>(n);
        const double lam2 = n >= 2 ? lambda_k(graph_laplacian(g), 2) : std::numeric_limits<double>::infinity();
        out.certified = lam2 > band;
        out.boundary = std::abs(lam2) <= band;
        out.spectral_mismatch = out.certified != out.connected;
      }
      break;
    }
    case Experiment::kSbm: {
      const GraphSample g = sample_sbm(n, c.p, c.q, rng);
      const CertificateReport rep = certify_sbm(g, cfg.tau_pos);
      record_certificate(rep, out);
      out.oracle_block = degree_diag_oracle_sbm(g).oracle_block;
      const SufficientCondition suff = sufficient_condition_sbm(g);
      out.sufficient = suff.holds;
      out.sufficient_violation = suff.holds && !rep.tight;
      maybe_cross_check(cfg, rep, signed_adjacency(g), *g.labels(), rng, out);
      break;
    }
    case Experiment::kZ2Gauss: {
      const SignVector z = random_signs(n, rng);
      const SyncInstance inst = sample_z2sync_gaussian(n, c.sigma, z, rng);
      const CertificateReport rep = certify_z2sync(inst, cfg.tau_pos);
      record_certificate(rep, out);
      maybe_cross_check(cfg, rep, inst.y, z, rng, out);
      break;
    }
    case Experiment::kZ2Er: {
      const SignVector z = random_signs(n, rng);
      const SyncInstance inst = sample_z2sync_er(n, c.p, c.eps, z, rng);
      const CertificateReport rep = certify_z2sync(inst, cfg.tau_pos);
      record_certificate(rep, out);
      out.oracle_block = mle_flip_oracle_z2(inst).oracle_block;
      maybe_cross_check(cfg, rep, inst.y, z, rng, out);
      break;
    }
    case Experiment::kRatio: {
      SymmetricMatrix l;
      if (cfg.ensemble == "centered-er") {
        l = centered_neg_laplacian(sample_er(n, c.p, rng), c.p);
      } else if (cfg.ensemble == "centered-sbm") {
        const GraphSample g = sample_sbm(n, c.p, c.q, rng);
        SymmetricMatrix diff = expected_gamma_sbm(*g.labels(), c.p, c.q);
        diff -= gamma_sbm(g);
        l = diff.conjugated(*g.labels());
      } else {
        SymmetricMatrix w = sample_wigner(n, rng);
        w *= -1.0;
        l = laplacian_of(w);
      }
      try {
        out.value = theorem_main_ratio(l).ratio;
      } catch (const Error& e) {
        // Tiny n can leave no positive diagonal entry; such trials are skipped.
        if (e.code() != ErrorCode::kNonPositiveDiagonalMax) throw;
        out.value = std::numeric_limits<double>::quiet_NaN();
      }
      break;
    }
    case Experiment::kNormBound: {
      const GraphSample g = sample_er(n, c.p, rng);
      SymmetricMatrix x(n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) x.set(i, j, (g.has_edge(i, j) ? 1.0 : 0.0) - c.p);
      const EnsembleProfile prof = profile_of({"centered-er", c.p, 0.0, 0.0}, n);
      out.value = spectral_norm(x);
      out.bound_holds = out.value <= 3.0 * prof.sigma + c.t;
      break;
    }
  }
  return out;
}

double quantile_sorted(const std::vector<double>& s, double q) {
  if (s.empty()) return std::numeric_limits<double>::quiet_NaN();
  const double pos = q * static_cast<double>(s.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, s.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return s[lo] + frac * (s[hi] - s[lo]);
}

PhaseCell aggregate(const SweepConfig& cfg, const CellParams& params, const TrialOutcome* outcomes) {
  PhaseCell cell;
  cell.params = params;
  cell.trials = cfg.trials;
  const double t = static_cast<double>(cfg.trials);
  std::size_t cert = 0, bnd = 0, block = 0, conn = 0, iso = 0, suff = 0, holds = 0;
  double norm_sum = 0.0;
  for (std::size_t k = 0; k < cfg.trials; ++k) {
    const TrialOutcome& o = outcomes[k];
    cert += o.certified;
    bnd += o.boundary;
    block += o.oracle_block;
    conn += o.connected;
    iso += o.isolated;
    suff += o.sufficient;
    holds += o.bound_holds;
    cell.sufficient_violations += o.sufficient_violation;
    cell.spectral_mismatches += o.spectral_mismatch;
    cell.bm_checked += o.bm_checked;
    cell.bm_violations += o.bm_violation;
    norm_sum += o.value;
    if (cfg.experiment == Experiment::kRatio) cell.ratios.push_back(o.value);
  }
  cell.freq_certified = static_cast<double>(cert) / t;
  cell.freq_boundary = static_cast<double>(bnd) / t;
  cell.freq_oracle_block = static_cast<double>(block) / t;
  cell.freq_connected = static_cast<double>(conn) / t;
  cell.freq_isolated = static_cast<double>(iso) / t;
  cell.freq_sufficient = static_cast<double>(suff) / t;
  cell.freq_bound_holds = static_cast<double>(holds) / t;
  cell.spectral_evaluated = cfg.experiment != Experiment::kEr || params.n <= cfg.spectral_limit;
  if (cfg.experiment == Experiment::kNormBound) {
    cell.mean_norm = norm_sum / t;
    cell.bound = 3.0 * profile_of({"centered-er", params.p, 0.0, 0.0}, params.n).sigma + params.t;
  }
  if (cfg.experiment == Experiment::kRatio) {
    std::vector<double> s;
    for (double v : cell.ratios)
      if (std::isfinite(v)) s.push_back(v);
    cell.ratio_skipped = cell.ratios.size() - s.size();
    std::sort(s.begin(), s.end());
    if (s.empty()) s.push_back(std::numeric_limits<double>::quiet_NaN());
    double sum = 0.0;
    for (double v : s) sum += v;
    cell.mean_ratio = sum / static_cast<double>(s.size());
    cell.median_ratio = quantile_sorted(s, 0.5);
    cell.q95_ratio = quantile_sorted(s, 0.95);
    cell.min_ratio = s.front();
    cell.max_ratio = s.back();
    cell.c1_surrogate = params.n >= 2 ? (cell.median_ratio - 1.0) * std::sqrt(log_n(params.n))
                                      : std::numeric_limits<double>::quiet_NaN();
  }
  cell.predicted_margin = predicted_margin(cfg.experiment, params);
  return cell;
}

}  // namespace

std::vector<CellParams> resolve_cells(const SweepConfig& cfg) {
  validate(cfg);
  std::vector<std::string> axes;
  for (const auto& a : axis_order(cfg.experiment))
    if (cfg.grids.count(a)) axes.push_back(a);

  CellParams defaults;
  if (cfg.experiment == Experiment::kNormBound) defaults.t_factor = 3.0;

  std::vector<CellParams> cells;
  std::vector<std::size_t> idx(axes.size(), 0);
  while (true) {
    CellParams c = defaults;
    for (std::size_t a = 0; a < axes.size(); ++a) set_axis(c, axes[a], cfg.grids.at(axes[a])[idx[a]]);
    finish_cell(cfg.experiment, cfg, c);
    cells.push_back(c);
    // Odometer: last axis varies fastest.
    std::size_t a = axes.size();
    while (a > 0) {
      --a;
      if (++idx[a] < cfg.grids.at(axes[a]).size()) break;
      idx[a] = 0;
      if (a == 0) return cells;
    }
    if (axes.empty()) return cells;
  }
}

SweepResult run_sweep(const SweepConfig& cfg, Execution mode) {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<CellParams> cells = resolve_cells(cfg);
  const std::size_t trials = cfg.trials;
  const std::size_t total = cells.size() * trials;

  std::vector<TrialOutcome> outcomes(total);
  std::vector<std::exception_ptr> failures(total);
  auto work = [&](std::size_t flat) {
    const std::size_t cell = flat / trials;
    const std::size_t trial = flat % trials;
    try {
      RngStream rng = derive_stream(cfg.master_seed, trial_stream_id(cell, trial));
      outcomes[flat] = run_trial(cfg, cells[cell], rng);
    } catch (...) {
      failures[flat] = std::current_exception();
    }
  };

  if (mode == Execution::kSerial) {
    for (std::size_t f = 0; f < total; ++f) work(f);
  } else {
#ifdef _OPENMP
    const int threads = cfg.threads > 0 ? cfg.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (std::ptrdiff_t f = 0; f < static_cast<std::ptrdiff_t>(total); ++f) work(static_cast<std::size_t>(f));
#else
    for (std::size_t f = 0; f < total; ++f) work(f);
#endif
  }
  for (const auto& e : failures)
    if (e) std::rethrow_exception(e);

  SweepResult result;
  result.config = cfg;
  result.cells.reserve(cells.size());
  for (std::size_t c = 0; c < cells.size(); ++c)
    result.cells.push_back(aggregate(cfg, cells[c], outcomes.data() + c * trials));
  result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

SweepResult run_ratio_experiment(const SweepConfig& cfg, Execution mode) {
  if (cfg.experiment != Experiment::kRatio) config_error("run_ratio_experiment needs experiment=ratio");
  return run_sweep(cfg, mode);
}

std::vector<std::string> csv_columns(Experiment e) {
  switch (e) {
    case Experiment::kEr:
      return {"cell", "n", "p", "rho", "trials", "freq_connected", "freq_isolated", "freq_certified",
              "freq_boundary", "spectral_mismatches", "predicted_margin"};
    case Experiment::kSbm:
      return {"cell", "n", "alpha", "beta", "p", "q", "trials", "freq_certified", "freq_boundary",
              "freq_oracle_block", "freq_sufficient", "sufficient_violations", "bm_checked", "bm_violations",
              "predicted_margin"};
    case Experiment::kZ2Gauss:
      return {"cell", "n", "sigma", "sigma_factor", "trials", "freq_certified", "freq_boundary", "bm_checked",
              "bm_violations", "predicted_margin"};
    case Experiment::kZ2Er:
      return {"cell", "n", "p", "eps", "K", "delta", "trials", "freq_certified", "freq_boundary",
              "freq_oracle_block", "bm_checked", "bm_violations", "predicted_margin"};
    case Experiment::kRatio:
      return {"cell", "n", "rho", "alpha", "beta", "trials", "mean_ratio", "median_ratio", "q95_ratio",
              "min_ratio", "max_ratio", "c1_surrogate", "skipped"};
    case Experiment::kNormBound:
      return {"cell", "n", "p", "t", "trials", "freq_bound_holds", "mean_norm", "bound"};
  }
  return {};
}

namespace {

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string fmt(std::size_t v) { return std::to_string(v); }

double value_of(const PhaseCell& c, const std::string& col) {
  const CellParams& p = c.params;
  static const double nan = std::numeric_limits<double>::quiet_NaN();
  if (col == "n") return static_cast<double>(p.n);
  if (col == "p") return p.p;
  if (col == "q") return p.q;
  if (col == "rho") return p.rho;
  if (col == "alpha") return p.alpha;
  if (col == "beta") return p.beta;
  if (col == "sigma") return p.sigma;
  if (col == "sigma_factor") return p.sigma_factor;
  if (col == "eps") return p.eps;
  if (col == "K") return p.k_const;
  if (col == "delta") return p.delta;
  if (col == "t") return p.t;
  if (col == "freq_certified") return c.spectral_evaluated ? c.freq_certified : nan;
  if (col == "freq_boundary") return c.spectral_evaluated ? c.freq_boundary : nan;
  if (col == "freq_oracle_block") return c.freq_oracle_block;
  if (col == "freq_connected") return c.freq_connected;
  if (col == "freq_isolated") return c.freq_isolated;
  if (col == "freq_sufficient") return c.freq_sufficient;
  if (col == "mean_ratio") return c.mean_ratio;
  if (col == "median_ratio") return c.median_ratio;
  if (col == "q95_ratio") return c.q95_ratio;
  if (col == "min_ratio") return c.min_ratio;
  if (col == "max_ratio") return c.max_ratio;
  if (col == "c1_surrogate") return c.c1_surrogate;
  if (col == "freq_bound_holds") return c.freq_bound_holds;
  if (col == "mean_norm") return c.mean_norm;
  if (col == "bound") return c.bound;
  if (col == "predicted_margin") return c.predicted_margin;
  return nan;
}

}  // namespace

std::string format_csv(const SweepResult& result) {
  const std::vector<std::string> cols = csv_columns(result.config.experiment);
  std::string out;
  for (std::size_t k = 0; k < cols.size(); ++k) {
    if (k) out += ',';
    out += cols[k];
  }
  out += '\n';
  for (std::size_t ci = 0; ci < result.cells.size(); ++ci) {
    const PhaseCell& c = result.cells[ci];
    for (std::size_t k = 0; k < cols.size(); ++k) {
      if (k) out += ',';
      const std::string& col = cols[k];
      if (col == "cell") out += fmt(ci);
      else if (col == "trials") out += fmt(c.trials);
      else if (col == "sufficient_violations") out += fmt(c.sufficient_violations);
      else if (col == "spectral_mismatches") out += c.spectral_evaluated ? fmt(c.spectral_mismatches) : "nan";
      else if (col == "skipped") out += fmt(c.ratio_skipped);
      else if (col == "bm_checked") out += fmt(c.bm_checked);
      else if (col == "bm_violations") out += fmt(c.bm_violations);
      else out += fmt(value_of(c, col));
    }
    out += '\n';
  }
  return out;
}

std::string format_meta_json(const SweepResult& result) {
  const SweepConfig& cfg = result.config;
  nlohmann::ordered_json j;
  j["tool"] = "tightcert";
  j["version"] = result.tool_version;
  j["experiment"] = to_string(cfg.experiment);
  nlohmann::ordered_json grids = nlohmann::ordered_json::object();
  for (const auto& a : axis_order(cfg.experiment))
    if (cfg.grids.count(a)) grids[a] = cfg.grids.at(a);
  j["grids"] = grids;
  j["trials"] = cfg.trials;
  j["seed"] = cfg.master_seed;
  j["tau_pos"] = cfg.tau_pos;
  j["rank_k"] = cfg.rank_k;
  j["bm_check"] = cfg.bm_check;
  if (cfg.experiment == Experiment::kRatio) j["ensemble"] = cfg.ensemble;
  if (cfg.experiment == Experiment::kEr) j["spectral_limit"] = cfg.spectral_limit;
  j["stream_id_rule"] = "cell_index * 2^32 + trial_index";
  j["cells"] = result.cells.size();
  j["wall_seconds"] = result.wall_seconds;
  return j.dump(2) + "\n";
}

std::string meta_path_for(const std::string& csv_path) {
  const auto slash = csv_path.find_last_of('/');
  const auto dot = csv_path.find_last_of('.');
  if (dot != std::string::npos && (slash == std::string::npos || dot > slash)) {
    return csv_path.substr(0, dot) + ".meta.json";
  }
  return csv_path + ".meta.json";
}

void write_csv(const SweepResult& result, const std::string& path) {
  auto write_file = [](const std::string& p, const std::string& body) {
    std::ofstream f(p, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorCode::kIoError, "cannot open '" + p + "' for writing");
    f << body;
    f.flush();
    if (!f) throw Error(ErrorCode::kIoError, "write to '" + p + "' failed");
  };
  write_file(path, format_csv(result));
  write_file(meta_path_for(path), format_meta_json(result));
}

std::size_t CsvTable::column(std::string_view name) const {
  for (std::size_t k = 0; k < header.size(); ++k)
    if (header[k] == name) return k;
  throw Error(ErrorCode::kInvalidArgument, "no column '" + std::string(name) + "'");
}

double CsvTable::number(std::size_t row, std::string_view name) const {
  const std::string& cell = rows.at(row).at(column(name));
  if (cell == "nan") return std::numeric_limits<double>::quiet_NaN();
  return std::stod(cell);
}

CsvTable parse_csv(std::string_view text) {
  CsvTable t;
  std::size_t pos = 0;
  bool first = true;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t f = 0;
    while (true) {
      const auto comma = line.find(',', f);
      fields.emplace_back(line.substr(f, comma == std::string_view::npos ? std::string_view::npos : comma - f));
      if (comma == std::string_view::npos) break;
      f = comma + 1;
    }
    if (first) {
      t.header = std::move(fields);
      first = false;
    } else {
      if (fields.size() != t.header.size()) throw Error(ErrorCode::kInvalidArgument, "ragged CSV row");
      t.rows.push_back(std::move(fields));
    }
  }
  return t;
}

}  // namespace tightcert
