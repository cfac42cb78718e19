#include "probchan/properties.hpp"

#include <cmath>

namespace probchan {

LabelSet label_range(const std::string& prefix, int count) {
  LabelSet out;
  for (int i = 0; i < count; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

FiniteDist random_dist(const LabelSet& space, SeededSampler& sampler) {
  std::map<Label, double> w;
  double total = 0.0;
  for (const Label& x : space) {
    double u = sampler.next_u01() + 0.05;  // bounded away from zero mass
    w[x] = u;
    total += u;
  }
  for (auto& [x, v] : w) v /= total;
  return FiniteDist(space, std::move(w));
}

DiscreteChannel random_channel(const LabelSet& in, const LabelSet& out,
                               SeededSampler& sampler) {
  std::map<Label, FiniteDist> rows;
  for (const Label& x : in) rows.emplace(x, random_dist(out, sampler));
  return DiscreteChannel(in, out, std::move(rows));
}

RandVarD random_randvar(const LabelSet& space, SeededSampler& sampler, double lo, double hi) {
  std::map<Label, double> vals;
  for (const Label& x : space) vals[x] = lo + (hi - lo) * sampler.next_u01();
  return RandVarD{space, std::move(vals)};
}

namespace {

PdfState uniform01() {
  return PdfState{[](double) { return 1.0; }, Interval{0.0, 1.0}, true};
}

CheckReport normalization_report(const QuadConfig& cfg) {
  std::vector<PdfState> states = {
      beta_state({0.5, 0.5}), beta_state({1.0, 1.0}), beta_state({2.0, 5.0}),
      normal_state({0.0, 1.0}), normal_state({3.0, 0.5}), normal_state({-2.0, 2.0})};
  // A pushed state and an updated state, to cover derived constructions.
  PdfChannel blur{[](double x, double y) { return normal_pdf(x, 1.0, y); },
                  normal_support({0.0, 1.0}), Interval{-26.0, 26.0}};
  states.push_back(push_pdf(blur, normal_state({0.0, 1.0}), cfg));
  states.push_back(update_pdf(beta_state({2.0, 3.0}), [](double x) { return x; }, cfg));
  std::vector<double> errs;
  for (const PdfState& s : states)
    errs.push_back(std::abs(state_mass(s, s.support, cfg) - 1.0));
  return finish_report("normalization", 1e-6, std::move(errs));
}

CheckReport adjunction_discrete_report(std::uint64_t seed) {
  SeededSampler sampler(seed, 0);
  std::vector<double> errs;
  for (int k = 0; k < 20; ++k) {
    int nx = 2 + static_cast<int>(sampler.next_u64() % 4);
    int ny = 2 + static_cast<int>(sampler.next_u64() % 4);
    LabelSet xs = label_range("x", nx), ys = label_range("y", ny);
    FiniteDist omega = random_dist(xs, sampler);
    DiscreteChannel c = random_channel(xs, ys, sampler);
    RandVarD r = random_randvar(ys, sampler);
    errs.push_back(std::abs(validity(omega, pull(c, r)) - validity(push(c, omega), r)));
  }
  return finish_report("adjunction_discrete", 1e-12, std::move(errs));
}

CheckReport adjunction_continuous_report(const QuadConfig& cfg) {
  std::vector<double> errs;
  {
    PdfState omega = beta_state({2.0, 3.0});
    LikelihoodChannel flip = flip_channel();
    std::vector<double> r = {0.3, 0.8};  // r(0), r(1)
    double lhs = validity_pdf(omega, pull_pdf(flip, r), cfg);
    KernelFn v = flip.kernel;
    double rhs = 0.0;
    for (int i = 0; i < 2; ++i)
      rhs += r[i] * validity_pdf(omega, [v, i](double x) { return v(x, i); }, cfg);
    errs.push_back(std::abs(lhs - rhs));
  }
  {
    PdfState omega = normal_state({0.0, 1.0});
    LikelihoodChannel noise = normal_likelihood({1.0}, Interval{-26.0, 26.0});
    RandVarC r = [](double y) { return 1.0 / (1.0 + y * y); };
    double lhs = validity_pdf(omega, pull_pdf(noise, r, cfg), cfg);
    PdfChannel as_pdf{noise.kernel, omega.support, noise.obs_window};
    double rhs = validity_pdf(push_pdf(as_pdf, omega, cfg), r, cfg);
    errs.push_back(std::abs(lhs - rhs));
  }
  return finish_report("adjunction_continuous", 1e-6, std::move(errs));
}

CheckReport scalar_invariance_discrete_report(std::uint64_t seed) {
  SeededSampler sampler(seed, 1 << 20);
  std::vector<double> errs;
  for (int k = 0; k < 10; ++k) {
    LabelSet xs = label_range("x", 2 + static_cast<int>(sampler.next_u64() % 4));
    FiniteDist omega = random_dist(xs, sampler);
    RandVarD r = random_randvar(xs, sampler, 0.1, 1.0);
    errs.push_back(total_variation(update(omega, r), update(omega, rv_scale(3.7, r))));
  }
  return finish_report("scalar_invariance_discrete", 1e-12, std::move(errs));
}

CheckReport scalar_invariance_continuous_report(const QuadConfig& cfg) {
  PdfState omega = beta_state({2.0, 3.0});
  RandVarC r = [](double x) { return x * (1.0 - x) + 0.1; };
  RandVarC ar = [r](double x) { return 2.5 * r(x); };
  std::vector<double> errs{
      state_distance(update_pdf(omega, r, cfg), update_pdf(omega, ar, cfg), cfg)};
  return finish_report("scalar_invariance_continuous", 1e-8, std::move(errs));
}

CheckReport update_fusion_discrete_report(std::uint64_t seed) {
  SeededSampler sampler(seed, 2 << 20);
  std::vector<double> errs;
  for (int k = 0; k < 10; ++k) {
    LabelSet xs = label_range("x", 2 + static_cast<int>(sampler.next_u64() % 4));
    FiniteDist omega = random_dist(xs, sampler);
    RandVarD r = random_randvar(xs, sampler, 0.1, 1.0);
    RandVarD s = random_randvar(xs, sampler, 0.1, 1.0);
    errs.push_back(
        total_variation(update(update(omega, r), s), update(omega, rv_and(r, s))));
  }
  return finish_report("update_fusion_discrete", 1e-12, std::move(errs));
}

CheckReport update_fusion_continuous_report(const QuadConfig& cfg) {
  PdfState omega = uniform01();
  RandVarC r = [](double x) { return 0.2 + 0.6 * x; };
  RandVarC s = [](double x) { return 1.0 - 0.5 * x; };
  RandVarC rs = [r, s](double x) { return r(x) * s(x); };
  std::vector<double> errs{state_distance(update_pdf(update_pdf(omega, r, cfg), s, cfg),
                                          update_pdf(omega, rs, cfg), cfg)};
  return finish_report("update_fusion_continuous", 1e-8, std::move(errs));
}

CheckReport fubini_report(const QuadConfig& cfg) {
  std::vector<double> errs;
  PdfState uni = uniform01();
  PdfState rho = beta_state({2.0, 2.0});
  auto h = [](double x, double y) { return x * y + std::sin(x + y); };
  errs.push_back(std::abs(product_integral(uni, rho, h, true, cfg) -
                          product_integral(uni, rho, h, false, cfg)));
  auto xy = [](double x, double y) { return x * y; };
  errs.push_back(std::abs(product_integral(uni, uni, xy, true, cfg) - 0.25));
  return finish_report("fubini_product_state", 1e-8, std::move(errs));
}

}  // namespace

std::vector<CheckReport> property_suite(std::uint64_t seed, const QuadConfig& cfg) {
  return {normalization_report(cfg),
          adjunction_discrete_report(seed),
          adjunction_continuous_report(cfg),
          scalar_invariance_discrete_report(seed),
          scalar_invariance_continuous_report(cfg),
          update_fusion_discrete_report(seed),
          update_fusion_continuous_report(cfg),
          fubini_report(cfg)};
}

}  // namespace probchan
