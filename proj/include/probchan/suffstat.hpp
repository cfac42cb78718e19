#pragma once

#include <variant>
#include <vector>

#include "probchan/conjugacy.hpp"
#include "probchan/continuous.hpp"
#include "probchan/families.hpp"

namespace probchan {

// Ordered list of observations y_1..y_m (label indices for finite obs).
struct ObsBatch {
  std::vector<double> observations;

  int size() const { return static_cast<int>(observations.size()); }
};

// Summary space Z: either a pair of counts or a real sum.
using Summary = std::variant<std::pair<long, long>, double>;

// Triple (s, t, q) factoring an m-observation likelihood as
// p(x, ys) = s(ys) * q(x, t(ys)).
struct SuffStat {
  int m = 0;
  std::function<double(const std::vector<double>&)> s;
  std::function<Summary(const std::vector<double>&)> t;
  std::function<double(double, const Summary&)> q;
};

// x |-> prod_i v(x, y_i), accumulated in log space.
RandVarC conjunction_likelihood(const LikelihoodChannel& model, const ObsBatch& batch);

// Single update by the conjunction likelihood.
PdfState multi_update(const PdfState& prior, const LikelihoodChannel& model,
                      const ObsBatch& batch, const QuadConfig& cfg = {});

// Counts statistic for Bernoulli batches: t = (n1, n0), q = x^n (1-x)^n', s = 1.
SuffStat beta_flip_stat(int m);

// Gaussian statistic: t sums the observations, q(x, z) = exp((2zx - m x^2)/2 nu^2).
SuffStat normal_stat(int m, const NoiseLevel& nu);

// Max relative factorization error of p = s * q(t) over the x probes.
CheckReport check_factorization(const SuffStat& stat, const LikelihoodChannel& model,
                                const ObsBatch& batch, const std::vector<double>& x_probes,
                                double tolerance = 1e-9);

// Distance between update-by-conjunction and update-by-summary.
CheckReport check_stat_update_equiv(const SuffStat& stat, const PdfState& prior,
                                    const LikelihoodChannel& model, const ObsBatch& batch,
                                    const QuadConfig& cfg = {}, double tolerance = 1e-6);

}  // namespace probchan
