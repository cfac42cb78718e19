#pragma once

#include <string>
#include <vector>

#include "probchan/continuous.hpp"
#include "probchan/numerics.hpp"

namespace probchan {

struct BetaParams {
  double alpha;
  double beta;
};

struct BinomConfig {
  int n;  // number of trials, n >= 1
};

struct DirichletParams {
  std::vector<double> alphas;  // strictly positive, length >= 2
};

struct NormalParams {
  double mu;
  double sigma;  // > 0
};

struct NoiseLevel {
  double nu;  // observation sd, > 0
};

void validate(const BetaParams& p);
void validate(const BinomConfig& c);
void validate(const DirichletParams& p);
void validate(const NormalParams& p);
void validate(const NoiseLevel& n);

// Densities (computed in log space internally).
double beta_pdf(const BetaParams& p, double x);
double normal_pdf(double mu, double sigma, double x);
double dirichlet_pdf(const DirichletParams& p, const std::vector<double>& x);

// Carrier windows. Beta lives on [eps, 1-eps] to keep integrable endpoint
// singularities off the quadrature nodes; Normal is truncated at
// mu +/- trunc_sigmas * sigma.
Interval beta_support();
Interval normal_support(const NormalParams& p, double trunc_sigmas = 12.0);

PdfState beta_state(const BetaParams& p);
PdfState normal_state(const NormalParams& p, double trunc_sigmas = 12.0);

// Parameterized family of pdf-states: the channel c : P -> X of a
// conjugate pair, with P flattened to a vector of reals.
struct ParamFamily {
  std::string name;
  std::function<double(const std::vector<double>&, double)> u;  // density u(p, x)
  std::function<Interval(const std::vector<double>&)> support;
  std::function<void(const std::vector<double>&)> validate;
};

ParamFamily beta_channel();
ParamFamily normal_channel(double trunc_sigmas = 12.0);

// Dirichlet family over the open n-simplex (density on full n-tuples).
struct SimplexFamily {
  int n;
  std::function<double(const std::vector<double>&, const std::vector<double>&)> density;
};

SimplexFamily dirichlet_channel(int n);

// Statistical models X -> O.
LikelihoodChannel flip_channel();
LikelihoodChannel binom_channel(const BinomConfig& cfg);
LikelihoodChannel mult_channel(const std::vector<std::string>& labels);
LikelihoodChannel normal_likelihood(const NoiseLevel& nu, const Interval& obs_window);

// Parameter translation functions h.
BetaParams h_beta_flip(const BetaParams& p, int i);
BetaParams h_beta_binom(const BetaParams& p, const BinomConfig& cfg, int i);
DirichletParams h_dirichlet(const DirichletParams& p, int i);
NormalParams h_normal(const NormalParams& p, const NoiseLevel& nu, double y);

}  // namespace probchan
