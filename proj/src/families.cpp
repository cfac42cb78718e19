#include "probchan/families.hpp"

#include <cmath>

namespace probchan {

namespace {

// Small enough that the clipped tail mass, O(sqrt(eps)) for alpha or beta
// down to 0.5, stays well below the 1e-6 comparison tolerances.
constexpr double kEdgeEps = 1e-16;

double safe_exp(double x) { return x < -745.0 ? 0.0 : std::exp(x); }

}  // namespace

void validate(const BetaParams& p) {
  if (!(p.alpha > 0.0) || !(p.beta > 0.0))
    throw DomainError("BetaParams: alpha, beta must be > 0");
}

void validate(const BinomConfig& c) {
  if (c.n < 1) throw DomainError("BinomConfig: n >= 1 required");
}

void validate(const DirichletParams& p) {
  if (p.alphas.size() < 2) throw DomainError("DirichletParams: need length >= 2");
  for (double a : p.alphas)
    if (!(a > 0.0)) throw DomainError("DirichletParams: alphas must be > 0");
}

void validate(const NormalParams& p) {
  if (!(p.sigma > 0.0)) throw DomainError("NormalParams: sigma must be > 0");
  if (!std::isfinite(p.mu)) throw DomainError("NormalParams: mu must be finite");
}

void validate(const NoiseLevel& n) {
  if (!(n.nu > 0.0)) throw DomainError("NoiseLevel: nu must be > 0");
}

double beta_pdf(const BetaParams& p, double x) {
  validate(p);
  if (x <= 0.0 || x >= 1.0) return 0.0;
  double lg = (p.alpha - 1.0) * std::log(x) + (p.beta - 1.0) * std::log1p(-x) -
              log_beta_fn(p.alpha, p.beta);
  return safe_exp(lg);
}

double normal_pdf(double mu, double sigma, double x) {
  double z = (x - mu) / sigma;
  return safe_exp(-0.5 * z * z) / (std::sqrt(2.0 * M_PI) * sigma);
}

double dirichlet_pdf(const DirichletParams& p, const std::vector<double>& x) {
  validate(p);
  if (x.size() != p.alphas.size())
    throw CarrierMismatch("dirichlet_pdf: dimension mismatch");
  double sum_a = 0.0, lg = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] <= 0.0) return 0.0;
    sum_a += p.alphas[i];
    lg += (p.alphas[i] - 1.0) * std::log(x[i]) - log_gamma(p.alphas[i]);
  }
  lg += log_gamma(sum_a);
  return safe_exp(lg);
}

Interval beta_support() { return Interval{kEdgeEps, 1.0 - kEdgeEps}; }

Interval normal_support(const NormalParams& p, double trunc_sigmas) {
  validate(p);
  return Interval{p.mu - trunc_sigmas * p.sigma, p.mu + trunc_sigmas * p.sigma};
}

PdfState beta_state(const BetaParams& p) {
  validate(p);
  return PdfState{[p](double x) { return beta_pdf(p, x); }, beta_support(), true};
}

PdfState normal_state(const NormalParams& p, double trunc_sigmas) {
  validate(p);
  return PdfState{[p](double x) { return normal_pdf(p.mu, p.sigma, x); },
                  normal_support(p, trunc_sigmas), true};
}

ParamFamily beta_channel() {
  ParamFamily fam;
  fam.name = "beta";
  fam.u = [](const std::vector<double>& p, double x) {
    return beta_pdf(BetaParams{p[0], p[1]}, x);
  };
  fam.support = [](const std::vector<double>&) { return beta_support(); };
  fam.validate = [](const std::vector<double>& p) {
    if (p.size() != 2) throw DomainError("beta parameters are (alpha, beta)");
    validate(BetaParams{p[0], p[1]});
  };
  return fam;
}

ParamFamily normal_channel(double trunc_sigmas) {
  ParamFamily fam;
  fam.name = "normal";
  fam.u = [](const std::vector<double>& p, double x) {
    return normal_pdf(p[0], p[1], x);
  };
  fam.support = [trunc_sigmas](const std::vector<double>& p) {
    return normal_support(NormalParams{p[0], p[1]}, trunc_sigmas);
  };
  fam.validate = [](const std::vector<double>& p) {
    if (p.size() != 2) throw DomainError("normal parameters are (mu, sigma)");
    validate(NormalParams{p[0], p[1]});
  };
  return fam;
}

SimplexFamily dirichlet_channel(int n) {
  if (n < 2) throw DomainError("dirichlet_channel: n >= 2 required");
  SimplexFamily fam;
  fam.n = n;
  fam.density = [n](const std::vector<double>& alphas, const std::vector<double>& x) {
    if (static_cast<int>(alphas.size()) != n || static_cast<int>(x.size()) != n)
      throw CarrierMismatch("dirichlet_channel: dimension mismatch");
    return dirichlet_pdf(DirichletParams{alphas}, x);
  };
  return fam;
}

LikelihoodChannel flip_channel() {
  LikelihoodChannel c;
  c.finite_obs = std::vector<std::string>{"0", "1"};
  c.kernel = [](double x, double y) {
    int i = static_cast<int>(y);
    return i == 1 ? x : 1.0 - x;
  };
  return c;
}

LikelihoodChannel binom_channel(const BinomConfig& cfg) {
  validate(cfg);
  std::vector<std::string> labels;
  for (int i = 0; i <= cfg.n; ++i) labels.push_back(std::to_string(i));
  LikelihoodChannel c;
  c.finite_obs = std::move(labels);
  int n = cfg.n;
  c.kernel = [n](double x, double y) {
    int i = static_cast<int>(y);
    if (i < 0 || i > n) return 0.0;
    if (x <= 0.0) return i == 0 ? 1.0 : 0.0;
    if (x >= 1.0) return i == n ? 1.0 : 0.0;
    return safe_exp(log_choose(n, i) + i * std::log(x) + (n - i) * std::log1p(-x));
  };
  return c;
}

LikelihoodChannel mult_channel(const std::vector<std::string>& labels) {
  if (labels.size() < 2) throw DomainError("mult_channel: need >= 2 labels");
  for (std::size_t i = 0; i < labels.size(); ++i)
    for (std::size_t j = i + 1; j < labels.size(); ++j)
      if (labels[i] == labels[j]) throw DomainError("mult_channel: duplicate label");
  LikelihoodChannel c;
  c.finite_obs = labels;
  // Mult(x)(y_i) = x_i; the carrier point is passed coordinatewise by the
  // simplex check code, so the kernel here is index selection only and is
  // not used through the 1-d LikelihoodChannel operations.
  c.kernel = [](double, double) { return 0.0; };
  return c;
}

LikelihoodChannel normal_likelihood(const NoiseLevel& nu, const Interval& obs_window) {
  validate(nu);
  LikelihoodChannel c;
  c.obs_window = obs_window;
  double v = nu.nu;
  c.kernel = [v](double x, double y) { return normal_pdf(x, v, y); };
  return c;
}

BetaParams h_beta_flip(const BetaParams& p, int i) {
  validate(p);
  if (i != 0 && i != 1) throw DomainError("h_beta_flip: observation must be 0 or 1");
  return BetaParams{p.alpha + i, p.beta + (1 - i)};
}

BetaParams h_beta_binom(const BetaParams& p, const BinomConfig& cfg, int i) {
  validate(p);
  validate(cfg);
  if (i < 0 || i > cfg.n) throw DomainError("h_beta_binom: observation out of range");
  return BetaParams{p.alpha + i, p.beta + cfg.n - i};
}

DirichletParams h_dirichlet(const DirichletParams& p, int i) {
  validate(p);
  if (i < 0 || i >= static_cast<int>(p.alphas.size()))
    throw UnknownLabel("h_dirichlet: observation index out of range");
  DirichletParams out = p;
  out.alphas[i] += 1.0;
  return out;
}

NormalParams h_normal(const NormalParams& p, const NoiseLevel& nu, double y) {
  validate(p);
  validate(nu);
  double v2 = nu.nu * nu.nu;
  double s2 = p.sigma * p.sigma;
  return NormalParams{(p.mu * v2 + y * s2) / (v2 + s2),
                      nu.nu * p.sigma / std::sqrt(v2 + s2)};
}

}  // namespace probchan
