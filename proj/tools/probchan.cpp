#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "probchan/conjugacy.hpp"
#include "probchan/continuous.hpp"
#include "probchan/discrete.hpp"
#include "probchan/families.hpp"
#include "probchan/properties.hpp"
#include "probchan/suffstat.hpp"

namespace {

namespace pc = probchan;
using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

// Optional quadrature overrides, loaded from the JSON file named by
// PROBCHAN_QUAD_CONFIG when that variable is set.
pc::QuadConfig quad_config_from_env() {
  pc::QuadConfig cfg;
  const char* path = std::getenv("PROBCHAN_QUAD_CONFIG");
  if (!path || !*path) return cfg;
  std::ifstream in(path);
  if (!in) throw pc::DomainError(std::string("cannot open quad config: ") + path);
  ordered_json j = ordered_json::parse(in);
  cfg.nodes_per_panel = j.value("nodes_per_panel", cfg.nodes_per_panel);
  cfg.max_panels = j.value("max_panels", cfg.max_panels);
  cfg.rel_tol = j.value("rel_tol", cfg.rel_tol);
  cfg.abs_tol = j.value("abs_tol", cfg.abs_tol);
  cfg.gauss_truncation_sigmas =
      j.value("gauss_truncation_sigmas", cfg.gauss_truncation_sigmas);
  return cfg;
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_csv(const std::filesystem::path& path, const std::vector<double>& xs,
               const std::vector<double>& ds) {
  std::ofstream out(path);
  if (!out) throw pc::DomainError("cannot write " + path.string());
  out << "x,density\n";
  for (std::size_t i = 0; i < xs.size(); ++i)
    out << fmt17(xs[i]) << "," << fmt17(ds[i]) << "\n";
}

ordered_json report_json(const pc::CheckReport& r) {
  return ordered_json{{"check_name", r.check_name},
                      {"probes", r.probes},
                      {"max_abs_err", r.max_abs_err},
                      {"tolerance", r.tolerance},
                      {"passed", r.passed}};
}

void write_report(const std::string& path, const ordered_json& config_echo,
                  const std::vector<pc::CheckReport>& reports) {
  ordered_json doc;
  doc["version"] = "1.0";
  doc["config_echo"] = config_echo;
  doc["reports"] = ordered_json::array();
  for (const auto& r : reports) doc["reports"].push_back(report_json(r));
  std::ofstream out(path);
  if (!out) throw pc::DomainError("cannot write " + path);
  out << doc.dump(2) << "\n";
}

void print_reports(const std::vector<pc::CheckReport>& reports) {
  for (const auto& r : reports)
    std::printf("[%s] %-55s max_err=%.3e tol=%.1e probes=%d\n",
                r.passed ? "PASS" : "FAIL", r.check_name.c_str(), r.max_abs_err,
                r.tolerance, r.probes);
}

bool all_passed(const std::vector<pc::CheckReport>& reports) {
  for (const auto& r : reports)
    if (!r.passed) return false;
  return true;
}

// ---------------------------------------------------------------- coin ----

// Densities are compared and sampled at x clamped into the open unit
// interval, so both the inversion route and the Beta closed form are
// evaluated where the Beta density is defined.
double clamp01(double x) {
  constexpr double eps = 1e-12;
  return std::min(std::max(x, eps), 1.0 - eps);
}

int run_coin(const std::string& obs, int grid, const std::string& out_dir,
             const pc::QuadConfig& cfg) {
  std::vector<int> bits;  // H -> 1, T -> 0
  for (char c : obs) {
    if (c == 'H')
      bits.push_back(1);
    else if (c == 'T')
      bits.push_back(0);
    else {
      std::cerr << "coin: observation string may only contain H and T\n";
      return kExitUsage;
    }
  }

  std::filesystem::create_directories(out_dir);
  std::vector<double> xs;
  for (int i = 0; i < grid; ++i)
    xs.push_back(static_cast<double>(i) / (grid - 1));

  auto sample = [&](const pc::PdfState& s) {
    std::vector<double> ds;
    for (double x : xs) ds.push_back(s.density(clamp01(x)));
    return ds;
  };

  pc::PdfState prior{[](double) { return 1.0; }, pc::Interval{0.0, 1.0}, true};
  pc::LikelihoodChannel flip = pc::flip_channel();

  // Route (a): repeated Bayesian inversion. Route (b): the Beta parameter
  // chain evaluated in closed form.
  pc::PdfState state_a = prior;
  pc::BetaParams params_b{1.0, 1.0};
  double max_discrepancy = 0.0;
  pc::PdfState after_first = prior;

  for (std::size_t k = 0; k < bits.size(); ++k) {
    state_a = pc::inversion_pdf(flip, state_a, static_cast<double>(bits[k]), cfg);
    params_b = pc::h_beta_flip(params_b, bits[k]);
    for (double x : xs) {
      double xc = clamp01(x);
      max_discrepancy = std::max(
          max_discrepancy, std::abs(state_a.density(xc) - pc::beta_pdf(params_b, xc)));
    }
    if (k == 0) after_first = state_a;
  }

  std::filesystem::path dir(out_dir);
  write_csv(dir / "prior.csv", xs, sample(prior));
  if (!bits.empty()) write_csv(dir / "posterior_obs1.csv", xs, sample(after_first));
  write_csv(dir / "posterior_final.csv", xs, sample(state_a));

  std::printf("observations: \"%s\" (H=1, T=0)\n", obs.c_str());
  std::printf("final parameters (translator route): alpha=%g beta=%g\n", params_b.alpha,
              params_b.beta);
  std::printf("max route discrepancy: %.6e\n", max_discrepancy);
  return kExitOk;
}

// -------------------------------------------------------------- verify ----

struct VerifyOptions {
  std::string family = "all";
  double tol = -1.0;  // < 0 means per-check defaults
  std::uint64_t seed = 1;
  std::string report_path = "verify_report.json";
  bool corrupt_translator = false;
  int mc_samples = 200000;
};

double pick(double override_tol, double default_tol) {
  return override_tol > 0.0 ? override_tol : default_tol;
}

void run_conjugate_pair(const pc::ConjugatePair& pair, const VerifyOptions& opt,
                        const pc::QuadConfig& cfg, double pointwise_default,
                        std::vector<pc::CheckReport>& out) {
  out.push_back(pc::check_pointwise_law(pair, cfg, pick(opt.tol, pointwise_default)));
  out.push_back(pc::check_inversion_equivalence(pair, cfg, pick(opt.tol, 1e-6)));
  out.push_back(pc::check_update_equivalence(pair, cfg, pick(opt.tol, 1e-6)));
}

void run_beta_flip(const VerifyOptions& opt, const pc::QuadConfig& cfg,
                   std::vector<pc::CheckReport>& out) {
  pc::ConjugatePair pair = pc::make_beta_flip_pair();
  if (opt.corrupt_translator) pair = pc::with_perturbed_translator(pair);
  run_conjugate_pair(pair, opt, cfg, 1e-6, out);

  pc::ObsBatch batch{{1, 0, 0, 1, 1}};
  pc::SuffStat stat = pc::beta_flip_stat(batch.size());
  std::vector<double> probes;
  for (int i = 1; i <= 9; ++i) probes.push_back(i / 10.0);
  pc::CheckReport fac = pc::check_factorization(stat, pair.model, batch, probes,
                                                pick(opt.tol, 1e-12));
  fac.check_name += "[beta-flip]";
  out.push_back(std::move(fac));
  pc::CheckReport upd = pc::check_stat_update_equiv(stat, pc::beta_state({2.0, 3.0}),
                                                    pair.model, batch, cfg,
                                                    pick(opt.tol, 1e-6));
  upd.check_name += "[beta-flip]";
  out.push_back(std::move(upd));
}

void run_beta_binom(const VerifyOptions& opt, const pc::QuadConfig& cfg,
                    std::vector<pc::CheckReport>& out) {
  for (int n : {1, 4, 10}) {
    pc::ConjugatePair pair = pc::make_beta_binom_pair(n);
    if (opt.corrupt_translator) pair = pc::with_perturbed_translator(pair);
    run_conjugate_pair(pair, opt, cfg, 1e-6, out);
  }
}

void run_normal_normal(const VerifyOptions& opt, const pc::QuadConfig& cfg,
                       std::vector<pc::CheckReport>& out) {
  for (double nu : {0.5, 1.0}) {
    pc::ConjugatePair pair = pc::make_normal_normal_pair(nu);
    if (opt.corrupt_translator) pair = pc::with_perturbed_translator(pair);
    run_conjugate_pair(pair, opt, cfg, 1e-5, out);

    pc::ObsBatch batch{{0.3, -1.2, 2.0, 0.7, -0.4}};
    pc::SuffStat stat = pc::normal_stat(batch.size(), {nu});
    pc::LikelihoodChannel model = pc::normal_likelihood({nu}, pc::Interval{-40.0, 40.0});
    std::string tag = "[normal(nu=" + std::to_string(nu) + ")]";
    pc::CheckReport fac = pc::check_factorization(stat, model, batch, {-1.0, 0.0, 0.5, 2.0},
                                                  pick(opt.tol, 1e-9));
    fac.check_name += tag;
    out.push_back(std::move(fac));
    pc::CheckReport upd = pc::check_stat_update_equiv(stat, pc::normal_state({0.0, 1.0}),
                                                      model, batch, cfg,
                                                      pick(opt.tol, 1e-6));
    upd.check_name += tag;
    out.push_back(std::move(upd));
  }
}

void run_dirichlet_mult(const VerifyOptions& opt, std::vector<pc::CheckReport>& out) {
  pc::SimplexConjugatePair pair = pc::make_dirichlet_mult_pair();
  if (opt.corrupt_translator) pair = pc::with_perturbed_translator(pair);

  // Parameter side of the translator is exact arithmetic.
  std::vector<double> param_errs;
  for (const auto& alphas : pair.param_probe_grid) {
    for (int i : pair.obs_probe_set) {
      std::vector<double> expected = alphas;
      expected[static_cast<std::size_t>(i)] += 1.0;
      std::vector<double> got = pair.translator(alphas, i);
      double err = 0.0;
      for (std::size_t k = 0; k < expected.size(); ++k)
        err = std::max(err, std::abs(got[k] - expected[k]));
      param_errs.push_back(err);
    }
  }
  out.push_back(pc::finish_report("translator_params_exact[" + pair.name + "]", 0.0,
                                  std::move(param_errs)));

  double tol = pick(opt.tol, 1e-2);
  out.push_back(pc::check_pointwise_law(pair, opt.seed, opt.mc_samples, tol));
  out.push_back(pc::check_inversion_equivalence(pair, opt.seed, opt.mc_samples, tol));
  out.push_back(pc::check_update_equivalence(pair, opt.seed, opt.mc_samples, tol));
}

int run_verify(const VerifyOptions& opt, const pc::QuadConfig& cfg) {
  std::vector<pc::CheckReport> reports;
  if (opt.family == "beta-flip" || opt.family == "all") run_beta_flip(opt, cfg, reports);
  if (opt.family == "beta-binom" || opt.family == "all") run_beta_binom(opt, cfg, reports);
  if (opt.family == "normal-normal" || opt.family == "all")
    run_normal_normal(opt, cfg, reports);
  if (opt.family == "dirichlet-mult" || opt.family == "all")
    run_dirichlet_mult(opt, reports);
  if (opt.family == "all") {
    for (auto& r : pc::property_suite(opt.seed, cfg)) reports.push_back(std::move(r));
  }

  print_reports(reports);
  ordered_json echo{{"command", "verify"},
                    {"family", opt.family},
                    {"seed", opt.seed},
                    {"tol", opt.tol > 0.0 ? ordered_json(opt.tol) : ordered_json(nullptr)},
                    {"mc_samples", opt.mc_samples}};
  if (!opt.report_path.empty()) write_report(opt.report_path, echo, reports);
  return all_passed(reports) ? kExitOk : kExitCheckFailed;
}

// ------------------------------------------------------------ suffstat ----

int run_suffstat(const std::string& family, const std::vector<double>& batch_vals,
                 double nu, const std::string& report_path, const pc::QuadConfig& cfg) {
  if (batch_vals.empty()) {
    std::cerr << "suffstat: --batch must list at least one observation\n";
    return kExitUsage;
  }
  pc::ObsBatch batch{batch_vals};
  std::vector<pc::CheckReport> reports;
  if (family == "beta-flip") {
    for (double v : batch_vals)
      if (v != 0.0 && v != 1.0) {
        std::cerr << "suffstat: beta-flip batches contain only 0 and 1\n";
        return kExitUsage;
      }
    pc::SuffStat stat = pc::beta_flip_stat(batch.size());
    pc::LikelihoodChannel model = pc::flip_channel();
    std::vector<double> probes;
    for (int i = 1; i <= 9; ++i) probes.push_back(i / 10.0);
    reports.push_back(pc::check_factorization(stat, model, batch, probes, 1e-12));
    reports.push_back(pc::check_stat_update_equiv(stat, pc::beta_state({1.0, 1.0}),
                                                  model, batch, cfg));
  } else {
    pc::SuffStat stat = pc::normal_stat(batch.size(), {nu});
    pc::LikelihoodChannel model = pc::normal_likelihood({nu}, pc::Interval{-50.0, 50.0});
    reports.push_back(
        pc::check_factorization(stat, model, batch, {-2.0, -0.5, 0.0, 1.0, 3.0}, 1e-9));
    reports.push_back(pc::check_stat_update_equiv(stat, pc::normal_state({0.0, 1.0}),
                                                  model, batch, cfg));
  }

  print_reports(reports);
  ordered_json echo{{"command", "suffstat"},
                    {"family", family},
                    {"batch", batch_vals},
                    {"nu", nu}};
  if (!report_path.empty()) write_report(report_path, echo, reports);
  return all_passed(reports) ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Channel-based probability calculus: coin figure, conjugacy "
               "verification, and sufficient-statistic checks"};
  app.require_subcommand(1);

  // coin
  std::string obs;
  int grid = 101;
  std::string out_dir = "coin_out";
  CLI::App* coin = app.add_subcommand("coin", "Posterior chain for a coin-flip sequence");
  coin->add_option("--obs", obs, "Observation string over {H,T}; may be empty");
  coin->add_option("--grid", grid, "Number of density grid points")
      ->check(CLI::Range(2, 1 << 20));
  coin->add_option("--out", out_dir, "Output directory for CSV files");

  // verify
  VerifyOptions vopt;
  CLI::App* verify = app.add_subcommand("verify", "Run the verification suite");
  verify->add_option("--family", vopt.family, "Family to check")
      ->check(CLI::IsMember(
          {"beta-flip", "beta-binom", "dirichlet-mult", "normal-normal", "all"}));
  verify->add_option("--tol", vopt.tol, "Override every check tolerance")
      ->check(CLI::PositiveNumber);
  verify->add_option("--seed", vopt.seed, "Seed for sampled checks");
  verify->add_option("--report", vopt.report_path, "JSON report path");
  verify->add_option("--mc-samples", vopt.mc_samples, "Monte Carlo sample count")
      ->check(CLI::Range(100, 10000000));
  verify->add_flag("--corrupt-translator", vopt.corrupt_translator)->group("");

  // suffstat
  std::string ss_family;
  std::vector<double> ss_batch;
  double ss_nu = 1.0;
  std::string ss_report = "suffstat_report.json";
  CLI::App* suff = app.add_subcommand("suffstat", "Check a sufficient-statistic triple");
  suff->add_option("--family", ss_family, "Statistic family")
      ->required()
      ->check(CLI::IsMember({"beta-flip", "normal"}));
  suff->add_option("--batch", ss_batch, "Comma-separated observation batch")
      ->required()
      ->delimiter(',');
  suff->add_option("--nu", ss_nu, "Observation noise for the normal statistic")
      ->check(CLI::PositiveNumber);
  suff->add_option("--report", ss_report, "JSON report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    pc::QuadConfig cfg = quad_config_from_env();
    if (coin->parsed()) return run_coin(obs, grid, out_dir, cfg);
    if (verify->parsed()) return run_verify(vopt, cfg);
    return run_suffstat(ss_family, ss_batch, ss_nu, ss_report, cfg);
  } catch (const pc::ZeroValidity& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const pc::ZeroMassObservation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const pc::NonConvergent& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const pc::NonFinite& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const pc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
