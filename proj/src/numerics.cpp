#include "probchan/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <string>

namespace probchan {

Interval make_interval(double lo, double hi) {
  if (!(lo < hi)) throw DomainError("Interval requires lo < hi");
  if (!std::isfinite(lo) || !std::isfinite(hi))
    throw DomainError("Interval endpoints must be finite; truncate first");
  return Interval{lo, hi};
}

Interval hull(const Interval& a, const Interval& b) {
  return Interval{std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

namespace {

struct GaussRule {
  std::vector<double> nodes;    // on (-1, 1)
  std::vector<double> weights;
};

// Nodes and weights by Newton iteration on the Legendre polynomial.
GaussRule compute_rule(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.weights[n - 1 - i] = rule.weights[i];
  }
  return rule;
}

const GaussRule& rule_for(int n) {
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_rule(n)).first;
  return it->second;
}

struct PanelResult {
  double integral;
  double spread;  // max f - min f over the panel nodes
};

PanelResult panel(const std::function<double(double)>& f, double a, double b,
                  const GaussRule& rule) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double sum = 0.0;
  double fmin = std::numeric_limits<double>::infinity();
  double fmax = -fmin;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    double v = f(c + h * rule.nodes[i]);
    if (!std::isfinite(v))
      throw NonFinite("integrand not finite at x = " + std::to_string(c + h * rule.nodes[i]));
    sum += rule.weights[i] * v;
    fmin = std::min(fmin, v);
    fmax = std::max(fmax, v);
  }
  return PanelResult{h * sum, fmax - fmin};
}

struct AdaptState {
  const std::function<double(double)>& f;
  const GaussRule& rule;
  int panels_used = 0;
  int max_panels;
};

double adapt(AdaptState& st, double a, double b, const PanelResult& whole, double abs_tol,
             double rel_tol, int depth) {
  st.panels_used += 2;
  if (st.panels_used > st.max_panels)
    throw NonConvergent("adaptive quadrature exceeded max_panels");
  const double mid = 0.5 * (a + b);
  const PanelResult left = panel(st.f, a, mid, st.rule);
  const PanelResult right = panel(st.f, mid, b, st.rule);
  const double refined = left.integral + right.integral;
  const double err = std::abs(refined - whole.integral);
  // Node placements carry absolute rounding of a few ulp(|x|); for steep
  // integrands the induced panel error ~ eps * |x| * spread cannot be
  // refined away, so accept once err falls under that floor.
  const double noise_floor = 16.0 * std::numeric_limits<double>::epsilon() *
                             std::max(std::abs(a), std::abs(b)) *
                             std::max(left.spread, right.spread);
  if (err <= std::max({abs_tol, rel_tol * std::abs(refined), noise_floor}) || depth > 60)
    return refined;
  return adapt(st, a, mid, left, 0.5 * abs_tol, rel_tol, depth + 1) +
         adapt(st, mid, b, right, 0.5 * abs_tol, rel_tol, depth + 1);
}

}  // namespace

double integrate_1d(const std::function<double(double)>& f, const Interval& domain,
                    const QuadConfig& cfg) {
  if (!(domain.lo < domain.hi)) throw DomainError("integration domain requires lo < hi");
  if (cfg.nodes_per_panel < 2 || cfg.max_panels < 1)
    throw DomainError("QuadConfig: nodes_per_panel >= 2, max_panels >= 1");
  if (!(cfg.rel_tol > 0.0 && cfg.rel_tol < 1.0) || !(cfg.abs_tol > 0.0 && cfg.abs_tol < 1.0))
    throw DomainError("QuadConfig: tolerances must lie in (0, 1)");
  const GaussRule& rule = rule_for(cfg.nodes_per_panel);
  AdaptState st{f, rule, 0, cfg.max_panels};
  st.panels_used = 1;
  const PanelResult whole = panel(f, domain.lo, domain.hi, rule);
  return adapt(st, domain.lo, domain.hi, whole, cfg.abs_tol, cfg.rel_tol, 0);
}

double log_gamma(double a) {
  if (!(a > 0.0)) throw DomainError("log_gamma requires a > 0");
  return std::lgamma(a);
}

double log_beta_fn(double alpha, double beta) {
  if (!(alpha > 0.0) || !(beta > 0.0))
    throw DomainError("log_beta_fn requires positive arguments");
  return log_gamma(alpha) + log_gamma(beta) - log_gamma(alpha + beta);
}

double log_choose(int n, int k) {
  if (k < 0 || k > n) throw DomainError("log_choose requires 0 <= k <= n");
  return log_gamma(n + 1.0) - log_gamma(k + 1.0) - log_gamma(n - k + 1.0);
}

namespace {

// SplitMix64 finalizer; counter-based so streams can be split.
std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t SeededSampler::next_u64() {
  std::uint64_t v = mix64(mix64(seed_) ^ mix64(counter_ * 0xd1342543de82ef95ULL + 1));
  ++counter_;
  return v;
}

double SeededSampler::next_u01() {
  // 53 random bits, shifted into (0, 1).
  std::uint64_t bits = next_u64() >> 11;
  double u = (static_cast<double>(bits) + 0.5) * (1.0 / 9007199254740992.0);
  return u;
}

std::vector<std::vector<double>> simplex_sample(int n, int count, SeededSampler& sampler) {
  if (n < 2) throw DomainError("simplex_sample requires n >= 2");
  if (count < 1) throw DomainError("simplex_sample requires count >= 1");
  std::vector<std::vector<double>> out;
  out.reserve(count);
  for (int k = 0; k < count; ++k) {
    // Exponential spacings give the uniform (Dirichlet(1,...,1)) law.
    std::vector<double> e(n);
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      e[i] = -std::log(sampler.next_u01());
      total += e[i];
    }
    for (int i = 0; i < n; ++i) e[i] /= total;
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace probchan
