#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "probchan/errors.hpp"

namespace probchan {

// Finite integration domain. Infinite carriers (the real line, Gaussian
// tails) must be truncated to a finite window before use.
struct Interval {
  double lo;
  double hi;

  double length() const { return hi - lo; }
  double midpoint() const { return 0.5 * (lo + hi); }
  bool contains(double x) const { return x >= lo && x <= hi; }
};

Interval make_interval(double lo, double hi);

// Hull of two intervals.
Interval hull(const Interval& a, const Interval& b);

struct QuadConfig {
  int nodes_per_panel = 16;
  int max_panels = 1 << 14;
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double gauss_truncation_sigmas = 12.0;
};

// Adaptive composite Gauss-Legendre integration of f over a finite domain.
// Deterministic for a fixed config. Throws NonConvergent when the panel
// budget runs out and NonFinite when f is NaN/inf at a node.
double integrate_1d(const std::function<double(double)>& f, const Interval& domain,
                    const QuadConfig& cfg = {});

// log Gamma(a) for a > 0.
double log_gamma(double a);

// log B(alpha, beta) = log Gamma(alpha) + log Gamma(beta) - log Gamma(alpha+beta).
double log_beta_fn(double alpha, double beta);

// log of the binomial coefficient C(n, k), computed via log_gamma.
double log_choose(int n, int k);

// Counter-based deterministic random stream. Identical (seed, counter)
// pairs give identical sequences on every platform; independent consumers
// can split streams by offsetting the counter.
class SeededSampler {
 public:
  explicit SeededSampler(std::uint64_t seed, std::uint64_t counter = 0)
      : seed_(seed), counter_(counter) {}

  std::uint64_t next_u64();
  // Uniform draw in the open interval (0, 1).
  double next_u01();

  std::uint64_t seed() const { return seed_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_;
};

// `count` points uniform on the open n-simplex: strictly positive
// coordinates summing to one. n >= 2.
std::vector<std::vector<double>> simplex_sample(int n, int count, SeededSampler& sampler);

}  // namespace probchan
