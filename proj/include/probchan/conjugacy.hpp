#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "probchan/continuous.hpp"
#include "probchan/discrete.hpp"
#include "probchan/families.hpp"

namespace probchan {

// A composable pair P -> X -> O together with its parameter translation
// function and the probe grids the checks run over.
struct ConjugatePair {
  std::string name;
  ParamFamily prior;                // c : P -> X
  LikelihoodChannel model;          // d : X -> O
  std::function<std::vector<double>(const std::vector<double>&, double)> translator;
  std::vector<std::vector<double>> param_probe_grid;
  std::vector<double> obs_probe_set;  // label indices for finite obs spaces
};

struct CheckReport {
  std::string check_name;
  int probes = 0;
  double max_abs_err = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  // Per-probe errors in fixed probe order (params outer, observations
  // inner); not part of the serialized report.
  std::vector<double> per_probe_err;
};

CheckReport finish_report(std::string name, double tolerance, std::vector<double> errs);

// Max of density sup-gap on a 101-point grid (between the 0.5% and 99.5%
// quantiles of a) and the CDF gap at 11 quantile probes.
double state_distance(const PdfState& a, const PdfState& b, const QuadConfig& cfg = {});
double state_distance(const FiniteDist& a, const FiniteDist& b);

// Pointwise conjugacy law: for probed (p, y) and M over 8 equal cells of
// the carrier plus the full carrier,
//   int_M u(p,x) v(x,y) dx  =  (int u v dx) * int_M u(h(p,y),x) dx.
CheckReport check_pointwise_law(const ConjugatePair& pair, const QuadConfig& cfg,
                                double tolerance);

// Translator posterior vs Bayesian inversion, compared by state_distance.
CheckReport check_inversion_equivalence(const ConjugatePair& pair, const QuadConfig& cfg,
                                        double tolerance);

// Translator posterior vs update by the likelihood random variable.
CheckReport check_update_equivalence(const ConjugatePair& pair, const QuadConfig& cfg,
                                     double tolerance);

// Point states commute with copiers: both sides evaluated on a 4x4
// rectangle grid of [0,1]^2.
CheckReport check_deterministic_point_state(double x0);

// Largest violation of copy o omega = omega (x) omega over the rectangle
// grid. Diffuse states are expected to violate it by more than 0.1.
double copy_defect(const PdfState& omega, const QuadConfig& cfg = {});

// Report form of the diffuse-state check: the error is the shortfall of
// the observed defect below 0.1, so a clearly-failing copy equation passes.
CheckReport check_diffuse_state_not_deterministic(const PdfState& omega,
                                                  const QuadConfig& cfg = {});

// Returns a copy of the pair whose translator output is shifted by +delta
// in its first coordinate (negative control).
ConjugatePair with_perturbed_translator(const ConjugatePair& pair, double delta = 0.5);

// Shipped pairs with their default probe grids.
ConjugatePair make_beta_flip_pair();
ConjugatePair make_beta_binom_pair(int n);
ConjugatePair make_normal_normal_pair(double nu);

// Dirichlet-Multinomial: the simplex carrier is verified by Monte Carlo
// (exact sums on the parameter side, seeded samples on the density side).
struct SimplexConjugatePair {
  std::string name;
  SimplexFamily prior;
  std::vector<std::vector<double>> param_probe_grid;
  std::vector<int> obs_probe_set;
  std::function<std::vector<double>(const std::vector<double>&, int)> translator;
};

SimplexConjugatePair make_dirichlet_mult_pair();
SimplexConjugatePair with_perturbed_translator(const SimplexConjugatePair& pair,
                                               double delta = 0.5);

CheckReport check_pointwise_law(const SimplexConjugatePair& pair, std::uint64_t seed,
                                int samples, double tolerance);
CheckReport check_inversion_equivalence(const SimplexConjugatePair& pair, std::uint64_t seed,
                                        int samples, double tolerance);
CheckReport check_update_equivalence(const SimplexConjugatePair& pair, std::uint64_t seed,
                                     int samples, double tolerance);

}  // namespace probchan
