#include "probchan/suffstat.hpp"

#include <cmath>

namespace probchan {

namespace {

constexpr int kBatchCap = 1000;

void check_batch(const LikelihoodChannel& model, const ObsBatch& batch) {
  if (batch.size() < 1) throw DomainError("observation batch must be non-empty");
  if (batch.size() > kBatchCap) throw DomainError("observation batch longer than 1000");
  if (model.finite()) {
    for (double y : batch.observations) {
      int i = static_cast<int>(y);
      if (i < 0 || i >= model.obs_count())
        throw UnknownLabel("batch observation outside the observation space");
    }
  }
}

}  // namespace

RandVarC conjunction_likelihood(const LikelihoodChannel& model, const ObsBatch& batch) {
  check_batch(model, batch);
  KernelFn v = model.kernel;
  std::vector<double> obs = batch.observations;
  return [v, obs](double x) {
    double log_p = 0.0;
    for (double y : obs) {
      double vi = v(x, y);
      if (vi <= 0.0) return 0.0;
      log_p += std::log(vi);
    }
    return log_p < -745.0 ? 0.0 : std::exp(log_p);
  };
}

PdfState multi_update(const PdfState& prior, const LikelihoodChannel& model,
                      const ObsBatch& batch, const QuadConfig& cfg) {
  return update_pdf(prior, conjunction_likelihood(model, batch), cfg);
}

SuffStat beta_flip_stat(int m) {
  if (m < 1) throw DomainError("beta_flip_stat: m >= 1");
  SuffStat st;
  st.m = m;
  st.s = [](const std::vector<double>&) { return 1.0; };
  st.t = [m](const std::vector<double>& ys) {
    if (static_cast<int>(ys.size()) != m) throw DomainError("batch length != m");
    long n1 = 0;
    for (double y : ys) n1 += static_cast<int>(y) == 1 ? 1 : 0;
    return Summary{std::make_pair(n1, static_cast<long>(m) - n1)};
  };
  st.q = [](double x, const Summary& z) {
    auto [n1, n0] = std::get<std::pair<long, long>>(z);
    return std::pow(x, static_cast<double>(n1)) * std::pow(1.0 - x, static_cast<double>(n0));
  };
  return st;
}

SuffStat normal_stat(int m, const NoiseLevel& nu) {
  if (m < 1) throw DomainError("normal_stat: m >= 1");
  validate(nu);
  double v2 = nu.nu * nu.nu;
  SuffStat st;
  st.m = m;
  st.s = [m, v2](const std::vector<double>& ys) {
    if (static_cast<int>(ys.size()) != m) throw DomainError("batch length != m");
    double sum_sq = 0.0;
    for (double y : ys) sum_sq += y * y;
    double lg = -0.5 * m * std::log(2.0 * M_PI * v2) - sum_sq / (2.0 * v2);
    return lg < -745.0 ? 0.0 : std::exp(lg);
  };
  st.t = [m](const std::vector<double>& ys) {
    if (static_cast<int>(ys.size()) != m) throw DomainError("batch length != m");
    double sum = 0.0;
    for (double y : ys) sum += y;
    return Summary{sum};
  };
  st.q = [m, v2](double x, const Summary& z) {
    double sum = std::get<double>(z);
    return std::exp((2.0 * sum * x - m * x * x) / (2.0 * v2));
  };
  return st;
}

CheckReport check_factorization(const SuffStat& stat, const LikelihoodChannel& model,
                                const ObsBatch& batch, const std::vector<double>& x_probes,
                                double tolerance) {
  if (x_probes.empty()) throw DomainError("check_factorization: no probes");
  if (batch.size() != stat.m) throw DomainError("check_factorization: batch length != m");
  RandVarC p = conjunction_likelihood(model, batch);
  double s = stat.s(batch.observations);
  Summary z = stat.t(batch.observations);
  std::vector<double> errs;
  for (double x : x_probes) {
    double direct = p(x);
    double factored = s * stat.q(x, z);
    double scale = std::max(std::abs(direct), 1e-300);
    errs.push_back(std::abs(direct - factored) / scale);
  }
  return finish_report("factorization", tolerance, std::move(errs));
}

CheckReport check_stat_update_equiv(const SuffStat& stat, const PdfState& prior,
                                    const LikelihoodChannel& model, const ObsBatch& batch,
                                    const QuadConfig& cfg, double tolerance) {
  if (batch.size() != stat.m) throw DomainError("check_stat_update_equiv: batch length != m");
  PdfState by_conjunction = multi_update(prior, model, batch, cfg);
  Summary z = stat.t(batch.observations);
  auto q = stat.q;
  PdfState by_summary = update_pdf(prior, [q, z](double x) { return q(x, z); }, cfg);
  std::vector<double> errs{state_distance(by_conjunction, by_summary, cfg)};
  return finish_report("stat_update_equiv", tolerance, std::move(errs));
}

}  // namespace probchan
