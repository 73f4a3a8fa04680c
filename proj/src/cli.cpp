#include "tightcert/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tightcert/certificates.hpp"
#include "tightcert/eigen.hpp"
#include "tightcert/error.hpp"
#include "tightcert/experiments.hpp"
#include "tightcert/tail_bounds.hpp"

namespace tightcert {

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

bool flag_present(const std::vector<std::string>& args, const std::string& flag) {
  for (const auto& a : args)
    if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
  return false;
}

std::optional<std::string> config_path(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw Error(ErrorCode::kConfigError, "--config needs a file path");
      return args[i + 1];
    }
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return std::nullopt;
}

std::string json_scalar(const nlohmann::json& v, const std::string& key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
  if (v.is_number()) return num(v.get<double>());
  throw Error(ErrorCode::kConfigError, "config key '" + key + "' has an unsupported value type");
}

// Appends "--key value" for every config entry whose flag is absent from args.
void inject_config(std::vector<std::string>& args, const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::kIoError, "cannot read config file '" + path + "'");
  nlohmann::json j;
  try {
    f >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kConfigError, "--config '" + path + "': " + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::kConfigError, "--config '" + path + "' must hold a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "config") continue;
    const std::string flag = "--" + key;
    if (flag_present(args, flag)) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back(flag);
      continue;
    }
    std::string text;
    if (value.is_array()) {
      for (std::size_t i = 0; i < value.size(); ++i) {
        if (i) text += ',';
        text += json_scalar(value[i], key);
      }
    } else {
      text = json_scalar(value, key);
    }
    args.push_back(flag);
    args.push_back(text);
  }
}

struct GridFlags {
  std::map<std::string, std::string> raw;

  void attach(CLI::App* app, const std::vector<std::string>& names) {
    for (const auto& name : names) app->add_option("--" + name, raw[name], "grid for " + name);
  }

  std::map<std::string, std::vector<double>> parse() const {
    std::map<std::string, std::vector<double>> out;
    for (const auto& [name, text] : raw) {
      if (text.empty()) continue;
      try {
        out[name] = parse_grid(text);
      } catch (const Error& e) {
        throw Error(ErrorCode::kConfigError, "--" + name + ": " + e.what());
      }
    }
    return out;
  }
};

void emit(const SweepResult& res, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << format_csv(res);
  } else {
    write_csv(res, out_path);
    out << "wrote " << res.cells.size() << " cells to " << out_path << " (" << meta_path_for(out_path) << ")\n";
  }
}

SymmetricMatrix read_matrix_file(const std::string& path, std::ostream& err) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::kIoError, "cannot read matrix file '" + path + "'");
  long long n = 0;
  if (!(f >> n) || n < 1) throw Error(ErrorCode::kIoError, "matrix file '" + path + "': bad dimension line");
  const auto nn = static_cast<std::size_t>(n);
  std::vector<double> vals(nn * nn);
  for (auto& v : vals) {
    std::string tok;
    if (!(f >> tok)) throw Error(ErrorCode::kIoError, "matrix file '" + path + "': expected " +
                                                          std::to_string(nn * nn) + " entries");
    try {
      std::size_t used = 0;
      v = std::stod(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kIoError, "matrix file '" + path + "': bad entry '" + tok + "'");
    }
  }
  double asym = 0.0;
  SymmetricMatrix m = SymmetricMatrix::symmetrized(nn, vals, &asym);
  if (asym > 1e-9) err << "warning: matrix asymmetry " << num(asym) << " exceeds 1e-9; symmetrized\n";
  return m;
}

void print_report(const CertificateReport& r, std::ostream& out) {
  out << "lambda1 " << num(r.lambda1) << "\n";
  out << "lambda2 " << num(r.lambda2) << "\n";
  out << "residual " << num(r.residual_null) << "\n";
  out << "margin " << num(r.margin) << "\n";
  out << "tight " << (r.tight ? "true" : "false") << "\n";
  out << "side " << to_string(r.side) << "\n";
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);

  CLI::App app{"Random Laplacian spectra, SDP tightness certificates and phase-transition sweeps", "tightcert"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(kToolVersion));

  std::uint64_t seed = 1;
  std::size_t trials = 10;
  std::string out_path;
  std::string config_file;
  app.add_option("--seed", seed, "master seed")->capture_default_str();
  app.add_option("--trials", trials, "trials per cell")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--out", out_path, "CSV output path (stdout when omitted)");
  app.add_option("--config", config_file, "JSON file of flag values (kebab-case keys); flags override it");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Monte Carlo phase-transition sweep");
  std::string experiment;
  GridFlags sweep_grids;
  std::size_t rank_k = 0, spectral_limit = 1000;
  double tau_pos = kTauPos;
  bool bm_check = false;
  int threads = 0;
  sweep->add_option("--experiment", experiment, "er | sbm | z2gauss | z2er | normbound")->required();
  sweep_grids.attach(sweep, {"n", "p", "q", "rho", "alpha", "beta", "sigma", "sigma-factor", "eps", "K", "delta",
                             "t-factor"});
  sweep->add_option("--rank-k", rank_k, "factor rank for the low-rank cross-check (0: ceil(sqrt(2n)))");
  sweep->add_option("--tau-pos", tau_pos, "relative dead band for lambda2 > 0");
  sweep->add_flag("--bm-check", bm_check, "cross-check tight trials with the low-rank solver");
  sweep->add_option("--spectral-limit", spectral_limit, "er: spectral connectivity only for n <= limit");
  sweep->add_option("--threads", threads, "worker threads (0: OpenMP default)");

  // ratio
  auto* ratio = app.add_subcommand("ratio", "lambda_max(L) / max_i L_ii over random Laplacians");
  std::string ensemble = "wigner-neg-laplacian";
  GridFlags ratio_grids;
  int ratio_threads = 0;
  ratio->add_option("--ensemble", ensemble, "wigner-neg-laplacian | centered-er | centered-sbm")
      ->capture_default_str();
  ratio_grids.attach(ratio, {"n", "rho", "alpha", "beta"});
  ratio->add_option("--threads", ratio_threads, "worker threads (0: OpenMP default)");

  // certify
  auto* certify = app.add_subcommand("certify", "sample one instance and certify it");
  std::string cert_model;
  std::size_t cert_n = 0;
  double cert_p = 0.0, cert_q = 0.0, cert_sigma = 0.0, cert_eps = 0.0;
  certify->add_option("--model", cert_model, "er | sbm | z2gauss | z2er")->required();
  certify->add_option("--n", cert_n, "dimension")->required();
  certify->add_option("--p", cert_p, "edge probability (er, sbm, z2er)");
  certify->add_option("--q", cert_q, "cross-cluster edge probability (sbm)");
  certify->add_option("--sigma", cert_sigma, "noise level (z2gauss)");
  certify->add_option("--eps", cert_eps, "corruption probability (z2er)");

  // eig
  auto* eig = app.add_subcommand("eig", "print the spectrum of a symmetric matrix file");
  std::string eig_file;
  bool eig_vectors = false;
  eig->add_option("--file", eig_file, "text file: n, then n rows of n reals")->required();
  eig->add_flag("--vectors", eig_vectors, "also print eigenvectors (one per line, ascending order)");

  // tail
  auto* tail = app.add_subcommand("tail", "threshold margins and tail probabilities");
  std::string tail_model;
  ThresholdQuery tq;
  std::size_t tail_m = 0, mc_trials = 0;
  double tail_p = 0.0, tail_q = 0.0, tail_delta = 0.0;
  tail->add_option("--model", tail_model, "er | sbm | z2gauss | z2er: print the threshold margin");
  tail->add_option("--n", tq.n, "dimension");
  tail->add_option("--rho", tq.rho, "er: p = rho log n / n");
  tail->add_option("--alpha", tq.alpha, "sbm: p = alpha log n / n");
  tail->add_option("--beta", tq.beta, "sbm: q = beta log n / n");
  tail->add_option("--sigma", tq.sigma, "z2gauss noise level");
  tail->add_option("--eps", tq.eps, "z2er corruption probability");
  tail->add_option("--K", tq.k_const, "z2er constant");
  tail->add_option("--delta", tail_delta, "z2er slack, or the tail threshold with --m");
  tail->add_option("--m", tail_m, "print P[sum_{i<=m}(Z_i - W_i) >= delta]");
  tail->add_option("--p", tail_p, "W_i ~ Bernoulli(p); also z2er edge probability");
  tail->add_option("--q", tail_q, "Z_i ~ Bernoulli(q)");
  tail->add_option("--mc-trials", mc_trials, "also print a Monte Carlo estimate with this many trials");

  try {
    if (auto path = config_path(args)) inject_config(args, *path);
    std::vector<const char*> cargv{argc > 0 ? argv[0] : "tightcert"};
    for (const auto& a : args) cargv.push_back(a.c_str());
    app.parse(static_cast<int>(cargv.size()), cargv.data());

    if (sweep->parsed()) {
      SweepConfig cfg;
      cfg.experiment = parse_experiment(experiment);
      if (cfg.experiment == Experiment::kRatio) {
        throw Error(ErrorCode::kConfigError, "--experiment ratio: use the ratio subcommand");
      }
      cfg.grids = sweep_grids.parse();
      cfg.trials = trials;
      cfg.master_seed = seed;
      cfg.out_path = out_path;
      cfg.rank_k = rank_k;
      cfg.tau_pos = tau_pos;
      cfg.bm_check = bm_check;
      cfg.spectral_limit = spectral_limit;
      cfg.threads = threads;
      emit(run_sweep(cfg), out_path, out);
    } else if (ratio->parsed()) {
      SweepConfig cfg;
      cfg.experiment = Experiment::kRatio;
      cfg.grids = ratio_grids.parse();
      cfg.trials = trials;
      cfg.master_seed = seed;
      cfg.out_path = out_path;
      cfg.ensemble = ensemble;
      cfg.threads = ratio_threads;
      emit(run_ratio_experiment(cfg), out_path, out);
    } else if (certify->parsed()) {
      RngStream rng = derive_stream(seed, 0);
      out << "model " << cert_model << "\nn " << cert_n << "\n";
      if (cert_model == "er") {
        require_probability(cert_p, "--p");
        const GraphSample g = sample_er(cert_n, cert_p, rng);
        out << "edges " << g.edge_count() << "\n";
        out << "connected_spectral " << (connectivity_spectral(g) ? "true" : "false") << "\n";
        out << "connected_unionfind " << (connectivity_unionfind(g) ? "true" : "false") << "\n";
      } else if (cert_model == "sbm") {
        const GraphSample g = sample_sbm(cert_n, cert_p, cert_q, rng);
        print_report(certify_sbm(g), out);
        const SufficientCondition s = sufficient_condition_sbm(g);
        out << "sufficient " << (s.holds ? "true" : "false") << " (" << num(s.lhs) << " vs " << num(s.rhs) << ")\n";
        out << "oracle_block " << (degree_diag_oracle_sbm(g).oracle_block ? "true" : "false") << "\n";
      } else if (cert_model == "z2gauss" || cert_model == "z2er") {
        SignVector z(cert_n);
        for (double& v : z) v = (rng.next_u64() >> 63) != 0 ? 1.0 : -1.0;
        const SyncInstance inst = cert_model == "z2gauss" ? sample_z2sync_gaussian(cert_n, cert_sigma, z, rng)
                                                          : sample_z2sync_er(cert_n, cert_p, cert_eps, z, rng);
        print_report(certify_z2sync(inst), out);
        if (inst.variant == SyncVariant::kDiscrete) {
          out << "oracle_block " << (mle_flip_oracle_z2(inst).oracle_block ? "true" : "false") << "\n";
        }
      } else {
        throw Error(ErrorCode::kConfigError, "--model must be er, sbm, z2gauss or z2er, got '" + cert_model + "'");
      }
    } else if (eig->parsed()) {
      const SymmetricMatrix m = read_matrix_file(eig_file, err);
      const Spectrum s = eig_all(m, eig_vectors);
      for (double v : s.eigenvalues) out << num(v) << "\n";
      if (eig_vectors) {
        for (std::size_t j = 0; j < m.size(); ++j) {
          const std::vector<double> v = s.vector(j);
          for (std::size_t i = 0; i < v.size(); ++i) out << (i ? " " : "") << num(v[i]);
          out << "\n";
        }
      }
    } else if (tail->parsed()) {
      if (tail_model.empty() && tail_m == 0) {
        throw Error(ErrorCode::kConfigError, "tail needs --model or --m");
      }
      if (!tail_model.empty()) {
        try {
          tq.model = parse_threshold_model(tail_model);
        } catch (const Error& e) {
          throw Error(ErrorCode::kConfigError, std::string("--model: ") + e.what());
        }
        tq.p = tail_p;
        tq.delta = tail_delta;
        out << "margin " << num(threshold_margin(tq)) << "\n";
      }
      if (tail_m > 0) {
        out << "t_exact " << num(t_exact(tail_m, tail_p, tail_q, tail_delta)) << "\n";
        if (mc_trials > 0) {
          RngStream rng = derive_stream(seed, 0);
          const MonteCarloEstimate mc = t_montecarlo(tail_m, tail_p, tail_q, tail_delta, mc_trials, rng);
          out << "t_montecarlo " << num(mc.estimate) << " se " << num(mc.std_error) << "\n";
        }
      }
    }
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::kIoError: return 2;
      case ErrorCode::kNonConvergence: return 3;
      default: return 1;
    }
  }
  return 0;
}

}  // namespace tightcert
