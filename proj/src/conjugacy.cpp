#include "probchan/conjugacy.hpp"

#include <algorithm>
#include <cmath>

namespace probchan {

namespace {

constexpr int kCells = 8;
constexpr int kGridPoints = 101;
constexpr int kCdfProbes = 11;

std::vector<Interval> cells_plus_full(const Interval& domain) {
  std::vector<Interval> out;
  double h = domain.length() / kCells;
  for (int k = 0; k < kCells; ++k)
    out.push_back(Interval{domain.lo + k * h, domain.lo + (k + 1) * h});
  out.push_back(domain);
  return out;
}

PdfState family_state(const ParamFamily& fam, const std::vector<double>& p) {
  fam.validate(p);
  auto u = fam.u;
  return PdfState{[u, p](double x) { return u(p, x); }, fam.support(p), true};
}

}  // namespace

CheckReport finish_report(std::string name, double tolerance, std::vector<double> errs) {
  CheckReport r;
  r.check_name = std::move(name);
  r.probes = static_cast<int>(errs.size());
  r.max_abs_err = errs.empty() ? 0.0 : *std::max_element(errs.begin(), errs.end());
  r.tolerance = tolerance;
  r.passed = r.max_abs_err <= tolerance;
  r.per_probe_err = std::move(errs);
  return r;
}

double state_distance(const PdfState& a, const PdfState& b, const QuadConfig& cfg) {
  Interval range = hull(a.support, b.support);
  CdfTable ca(a, range);
  CdfTable cb(b, range);
  double lo = ca.quantile(0.005);
  double hi = ca.quantile(0.995);
  if (!(lo < hi)) {
    lo = range.lo;
    hi = range.hi;
  }
  double d = 0.0;
  for (int i = 0; i < kGridPoints; ++i) {
    double x = lo + (hi - lo) * i / (kGridPoints - 1);
    double fa = a.density(x);
    double fb = b.density(x);
    // Scaled gap: near integrable singularities the density is huge and a
    // plain sup-gap would amplify the irreducible support-truncation error;
    // dividing by 1 + max keeps the metric absolute where densities are
    // moderate and relative where they blow up.
    d = std::max(d, std::abs(fa - fb) / (1.0 + std::max(fa, fb)));
  }
  for (int k = 1; k <= kCdfProbes; ++k) {
    double x = ca.quantile(static_cast<double>(k) / (kCdfProbes + 1));
    d = std::max(d, std::abs(ca.cdf(x) - cb.cdf(x)));
  }
  return d;
}

double state_distance(const FiniteDist& a, const FiniteDist& b) {
  return total_variation(a, b);
}

CheckReport check_pointwise_law(const ConjugatePair& pair, const QuadConfig& cfg,
                                double tolerance) {
  std::vector<double> errs;
  for (const auto& p : pair.param_probe_grid) {
    for (double y : pair.obs_probe_set) {
      std::vector<double> hp = pair.translator(p, y);
      pair.prior.validate(hp);
      Interval domain = hull(pair.prior.support(p), pair.prior.support(hp));
      auto integrand = [&](double x) { return pair.prior.u(p, x) * pair.model.kernel(x, y); };
      double full = integrate_1d(integrand, domain, cfg);
      double err = 0.0;
      for (const Interval& m : cells_plus_full(domain)) {
        double lhs = integrate_1d(integrand, m, cfg);
        double post_mass = integrate_1d([&](double x) { return pair.prior.u(hp, x); }, m, cfg);
        err = std::max(err, std::abs(lhs - full * post_mass));
      }
      errs.push_back(err);
    }
  }
  return finish_report("pointwise_law[" + pair.name + "]", tolerance, std::move(errs));
}

CheckReport check_inversion_equivalence(const ConjugatePair& pair, const QuadConfig& cfg,
                                        double tolerance) {
  std::vector<double> errs;
  for (const auto& p : pair.param_probe_grid) {
    PdfState prior = family_state(pair.prior, p);
    for (double y : pair.obs_probe_set) {
      std::vector<double> hp = pair.translator(p, y);
      pair.prior.validate(hp);
      PdfState analytic = family_state(pair.prior, hp);
      PdfState inverted = inversion_pdf(pair.model, prior, y, cfg);
      errs.push_back(state_distance(analytic, inverted, cfg));
    }
  }
  return finish_report("inversion_equivalence[" + pair.name + "]", tolerance,
                       std::move(errs));
}

CheckReport check_update_equivalence(const ConjugatePair& pair, const QuadConfig& cfg,
                                     double tolerance) {
  std::vector<double> errs;
  for (const auto& p : pair.param_probe_grid) {
    PdfState prior = family_state(pair.prior, p);
    for (double y : pair.obs_probe_set) {
      std::vector<double> hp = pair.translator(p, y);
      pair.prior.validate(hp);
      PdfState analytic = family_state(pair.prior, hp);
      auto v = pair.model.kernel;
      PdfState updated = update_pdf(prior, [v, y](double x) { return v(x, y); }, cfg);
      errs.push_back(state_distance(analytic, updated, cfg));
    }
  }
  return finish_report("update_equivalence[" + pair.name + "]", tolerance, std::move(errs));
}

namespace {

std::vector<Interval> unit_quarters() {
  return {Interval{0.0, 0.25}, Interval{0.25, 0.5}, Interval{0.5, 0.75},
          Interval{0.75, 1.0}};
}

double indicator(const Interval& m, double x) { return m.contains(x) ? 1.0 : 0.0; }

}  // namespace

CheckReport check_deterministic_point_state(double x0) {
  std::vector<double> errs;
  for (const Interval& m : unit_quarters()) {
    for (const Interval& n : unit_quarters()) {
      // copy o eta(x0) on M x N is 1_{M cap N}(x0); the product side is
      // 1_M(x0) * 1_N(x0). Equal by indicator algebra.
      Interval cap{std::max(m.lo, n.lo), std::min(m.hi, n.hi)};
      double lhs = (cap.lo <= cap.hi) ? indicator(cap, x0) : 0.0;
      double rhs = indicator(m, x0) * indicator(n, x0);
      errs.push_back(std::abs(lhs - rhs));
    }
  }
  return finish_report("deterministic_point_state", 1e-12, std::move(errs));
}

double copy_defect(const PdfState& omega, const QuadConfig& cfg) {
  double span = omega.support.length();
  double defect = 0.0;
  for (const Interval& mq : unit_quarters()) {
    for (const Interval& nq : unit_quarters()) {
      Interval m{omega.support.lo + mq.lo * span, omega.support.lo + mq.hi * span};
      Interval n{omega.support.lo + nq.lo * span, omega.support.lo + nq.hi * span};
      Interval cap{std::max(m.lo, n.lo), std::min(m.hi, n.hi)};
      double lhs = (cap.lo < cap.hi) ? state_mass(omega, cap, cfg) : 0.0;
      double rhs = state_mass(omega, m, cfg) * state_mass(omega, n, cfg);
      defect = std::max(defect, std::abs(lhs - rhs));
    }
  }
  return defect;
}

CheckReport check_diffuse_state_not_deterministic(const PdfState& omega,
                                                  const QuadConfig& cfg) {
  double defect = copy_defect(omega, cfg);
  std::vector<double> errs{std::max(0.0, 0.1 - defect)};
  return finish_report("diffuse_state_not_deterministic", 1e-12, std::move(errs));
}

ConjugatePair with_perturbed_translator(const ConjugatePair& pair, double delta) {
  ConjugatePair out = pair;
  out.name = pair.name + "+perturbed";
  auto h = pair.translator;
  out.translator = [h, delta](const std::vector<double>& p, double y) {
    std::vector<double> hp = h(p, y);
    hp[0] += delta;
    return hp;
  };
  return out;
}

namespace {

std::vector<std::vector<double>> beta_param_grid() {
  const double vals[] = {0.5, 1.0, 2.0, 5.0};
  std::vector<std::vector<double>> grid;
  for (double a : vals)
    for (double b : vals) grid.push_back({a, b});
  return grid;
}

}  // namespace

ConjugatePair make_beta_flip_pair() {
  ConjugatePair pair;
  pair.name = "beta-flip";
  pair.prior = beta_channel();
  pair.model = flip_channel();
  pair.translator = [](const std::vector<double>& p, double y) {
    BetaParams hp = h_beta_flip(BetaParams{p[0], p[1]}, static_cast<int>(y));
    return std::vector<double>{hp.alpha, hp.beta};
  };
  pair.param_probe_grid = beta_param_grid();
  pair.obs_probe_set = {0.0, 1.0};
  return pair;
}

ConjugatePair make_beta_binom_pair(int n) {
  BinomConfig cfg{n};
  validate(cfg);
  ConjugatePair pair;
  pair.name = "beta-binom(n=" + std::to_string(n) + ")";
  pair.prior = beta_channel();
  pair.model = binom_channel(cfg);
  pair.translator = [cfg](const std::vector<double>& p, double y) {
    BetaParams hp = h_beta_binom(BetaParams{p[0], p[1]}, cfg, static_cast<int>(y));
    return std::vector<double>{hp.alpha, hp.beta};
  };
  pair.param_probe_grid = beta_param_grid();
  for (int i = 0; i <= n; ++i) pair.obs_probe_set.push_back(static_cast<double>(i));
  return pair;
}

ConjugatePair make_normal_normal_pair(double nu) {
  NoiseLevel noise{nu};
  validate(noise);
  ConjugatePair pair;
  pair.name = "normal-normal(nu=" + std::to_string(nu) + ")";
  pair.prior = normal_channel();
  pair.model = normal_likelihood(noise, Interval{-40.0, 40.0});
  pair.translator = [noise](const std::vector<double>& p, double y) {
    NormalParams hp = h_normal(NormalParams{p[0], p[1]}, noise, y);
    return std::vector<double>{hp.mu, hp.sigma};
  };
  for (double mu : {-2.0, 0.0, 3.0})
    for (double sigma : {0.5, 1.0, 2.0}) pair.param_probe_grid.push_back({mu, sigma});
  pair.obs_probe_set = {-1.0, 0.5, 2.0};
  return pair;
}

SimplexConjugatePair make_dirichlet_mult_pair() {
  SimplexConjugatePair pair;
  pair.name = "dirichlet-mult";
  pair.prior = dirichlet_channel(3);
  pair.param_probe_grid = {{1.0, 1.0, 1.0}, {2.0, 3.0, 4.0}};
  pair.obs_probe_set = {0, 1, 2};
  pair.translator = [](const std::vector<double>& alphas, int i) {
    DirichletParams hp = h_dirichlet(DirichletParams{alphas}, i);
    return hp.alphas;
  };
  return pair;
}

SimplexConjugatePair with_perturbed_translator(const SimplexConjugatePair& pair,
                                               double delta) {
  SimplexConjugatePair out = pair;
  out.name = pair.name + "+perturbed";
  auto h = pair.translator;
  out.translator = [h, delta](const std::vector<double>& alphas, int i) {
    std::vector<double> hp = h(alphas, i);
    hp[0] += delta;
    return hp;
  };
  return out;
}

namespace {

// Volume of the open n-simplex in its (n-1)-dimensional coordinates is
// 1/(n-1)!, which is what the uniform sampler integrates against.
double simplex_volume(int n) {
  double v = 1.0;
  for (int k = 2; k < n; ++k) v /= k;
  return v;
}

double alpha_sum(const std::vector<double>& a) {
  double s = 0.0;
  for (double x : a) s += x;
  return s;
}

}  // namespace

CheckReport check_pointwise_law(const SimplexConjugatePair& pair, std::uint64_t seed,
                                int samples, double tolerance) {
  SeededSampler sampler(seed);
  int n = pair.prior.n;
  auto points = simplex_sample(n, samples, sampler);
  double vol = simplex_volume(n);
  std::vector<double> errs;
  for (const auto& alphas : pair.param_probe_grid) {
    for (int yi : pair.obs_probe_set) {
      std::vector<double> hp = pair.translator(alphas, yi);
      // Full-space factor in closed form: int x_i dDir(alpha) = alpha_i / sum.
      double full = alphas[yi] / alpha_sum(alphas);
      double err = 0.0;
      // M cells: 8 slabs of the first coordinate, plus the full simplex.
      for (int cell = 0; cell <= kCells; ++cell) {
        double lo = cell < kCells ? cell / static_cast<double>(kCells) : 0.0;
        double hi = cell < kCells ? (cell + 1) / static_cast<double>(kCells) : 1.0;
        double lhs = 0.0, post = 0.0;
        for (const auto& x : points) {
          if (x[0] < lo || x[0] >= hi) continue;
          lhs += pair.prior.density(alphas, x) * x[yi];
          post += pair.prior.density(hp, x);
        }
        lhs *= vol / samples;
        post *= vol / samples;
        err = std::max(err, std::abs(lhs - full * post));
      }
      errs.push_back(err);
    }
  }
  return finish_report("pointwise_law[" + pair.name + "]", tolerance, std::move(errs));
}

namespace {

CheckReport simplex_posterior_check(const SimplexConjugatePair& pair, std::uint64_t seed,
                                    int samples, double tolerance, const std::string& name) {
  SeededSampler sampler(seed);
  int n = pair.prior.n;
  auto points = simplex_sample(n, samples, sampler);
  double vol = simplex_volume(n);
  std::vector<double> errs;
  for (const auto& alphas : pair.param_probe_grid) {
    for (int yi : pair.obs_probe_set) {
      std::vector<double> hp = pair.translator(alphas, yi);
      // Normalization of the density-ratio posterior, by Monte Carlo.
      double z = 0.0;
      for (const auto& x : points) z += pair.prior.density(alphas, x) * x[yi];
      z *= vol / samples;
      double l1 = 0.0;
      for (const auto& x : points) {
        double post = pair.prior.density(alphas, x) * x[yi] / z;
        l1 += std::abs(pair.prior.density(hp, x) - post);
      }
      l1 *= vol / samples;
      errs.push_back(l1);
    }
  }
  return finish_report(name + "[" + pair.name + "]", tolerance, std::move(errs));
}

}  // namespace

CheckReport check_inversion_equivalence(const SimplexConjugatePair& pair, std::uint64_t seed,
                                        int samples, double tolerance) {
  return simplex_posterior_check(pair, seed, samples, tolerance, "inversion_equivalence");
}

CheckReport check_update_equivalence(const SimplexConjugatePair& pair, std::uint64_t seed,
                                     int samples, double tolerance) {
  return simplex_posterior_check(pair, seed, samples, tolerance, "update_equivalence");
}

}  // namespace probchan
