#include "probchan/continuous.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace probchan {

namespace {

constexpr double kZeroValidity = 1e-300;
constexpr double kNormTol = 1e-6;

Interval clip(const Interval& m, const Interval& support) {
  double lo = std::max(m.lo, support.lo);
  double hi = std::min(m.hi, support.hi);
  if (!(lo < hi)) return Interval{0.0, 0.0};
  return Interval{lo, hi};
}

double mass_on(const DensityFn& f, const Interval& m, const QuadConfig& cfg) {
  if (!(m.lo < m.hi)) return 0.0;
  return integrate_1d(f, m, cfg);
}

}  // namespace

PdfState make_pdf_state(DensityFn density, const Interval& support, const QuadConfig& cfg) {
  double total = integrate_1d(density, support, cfg);
  if (std::abs(total - 1.0) > kNormTol)
    throw DomainError("pdf state does not integrate to 1 (got " + std::to_string(total) + ")");
  return PdfState{std::move(density), support, true};
}

PdfState normalize_pdf_state(const DensityFn& unnormalized, const Interval& support,
                             const QuadConfig& cfg) {
  double z = integrate_1d(unnormalized, support, cfg);
  if (!(z > kZeroValidity)) throw ZeroValidity("normalize_pdf_state: zero total mass");
  DensityFn f = [unnormalized, z](double x) { return unnormalized(x) / z; };
  return PdfState{std::move(f), support, true};
}

double state_mass(const PdfState& omega, const Interval& m, const QuadConfig& cfg) {
  return mass_on(omega.density, clip(m, omega.support), cfg);
}

PdfState push_pdf(const PdfChannel& c, const PdfState& omega, const QuadConfig& cfg) {
  DensityFn f = omega.density;
  Interval in = omega.support;
  KernelFn u = c.kernel;
  DensityFn out = [f, u, in, cfg](double y) {
    return integrate_1d([&](double x) { return f(x) * u(x, y); }, in, cfg);
  };
  return make_pdf_state(std::move(out), c.out_support, cfg);
}

PdfChannel compose_pdf(const PdfChannel& d, const PdfChannel& c, const QuadConfig& cfg) {
  KernelFn u = c.kernel;
  KernelFn v = d.kernel;
  Interval mid = c.out_support;
  KernelFn w = [u, v, mid, cfg](double x, double z) {
    return integrate_1d([&](double y) { return u(x, y) * v(y, z); }, mid, cfg);
  };
  return PdfChannel{std::move(w), c.in_support, d.out_support};
}

JointState graph_push(const PdfChannel& c, const PdfState& omega, const QuadConfig& cfg) {
  DensityFn f = omega.density;
  Interval sup = omega.support;
  KernelFn u = c.kernel;
  Interval out = c.out_support;
  JointState joint;
  joint.finite_obs = false;
  joint.rect_mass = [f, u, sup, out, cfg](const Interval& m, const Interval& n) {
    Interval mm = clip(m, sup);
    Interval nn = clip(n, out);
    if (!(mm.lo < mm.hi) || !(nn.lo < nn.hi)) return 0.0;
    return integrate_1d(
        [&](double y) {
          return integrate_1d([&](double x) { return f(x) * u(x, y); }, mm, cfg);
        },
        nn, cfg);
  };
  return joint;
}

JointState graph_push(const LikelihoodChannel& c, const PdfState& omega,
                      const QuadConfig& cfg) {
  DensityFn f = omega.density;
  Interval sup = omega.support;
  KernelFn v = c.kernel;
  JointState joint;
  if (c.finite()) {
    joint.finite_obs = true;
    joint.cell_mass = [f, v, sup, cfg](const Interval& m, int y) {
      Interval mm = clip(m, sup);
      if (!(mm.lo < mm.hi)) return 0.0;
      return integrate_1d([&](double x) { return f(x) * v(x, static_cast<double>(y)); }, mm,
                          cfg);
    };
  } else {
    joint.finite_obs = false;
    Interval out = c.obs_window;
    joint.rect_mass = [f, v, sup, out, cfg](const Interval& m, const Interval& n) {
      Interval mm = clip(m, sup);
      Interval nn = clip(n, out);
      if (!(mm.lo < mm.hi) || !(nn.lo < nn.hi)) return 0.0;
      return integrate_1d(
          [&](double y) {
            return integrate_1d([&](double x) { return f(x) * v(x, y); }, mm, cfg);
          },
          nn, cfg);
    };
  }
  return joint;
}

double validity_pdf(const PdfState& omega, const RandVarC& r, const QuadConfig& cfg) {
  return integrate_1d([&](double x) { return omega.density(x) * r(x); }, omega.support, cfg);
}

RandVarC pull_pdf(const LikelihoodChannel& c, const std::vector<double>& r) {
  if (!c.finite()) throw CarrierMismatch("pull_pdf: finite random variable on real obs space");
  if (static_cast<int>(r.size()) != c.obs_count())
    throw CarrierMismatch("pull_pdf: random variable length != observation space size");
  KernelFn v = c.kernel;
  return [v, r](double x) {
    double sum = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) sum += v(x, static_cast<double>(i)) * r[i];
    return sum;
  };
}

RandVarC pull_pdf(const LikelihoodChannel& c, const RandVarC& r, const QuadConfig& cfg) {
  if (c.finite()) throw CarrierMismatch("pull_pdf: continuous random variable on finite obs");
  KernelFn v = c.kernel;
  Interval w = c.obs_window;
  return [v, r, w, cfg](double x) {
    return integrate_1d([&](double y) { return v(x, y) * r(y); }, w, cfg);
  };
}

PdfState update_pdf(const PdfState& omega, const RandVarC& r, const QuadConfig& cfg) {
  DensityFn f = omega.density;
  double z = validity_pdf(omega, r, cfg);
  if (!(z > kZeroValidity)) throw ZeroValidity("update_pdf: zero validity");
  DensityFn out = [f, r, z](double x) { return f(x) * r(x) / z; };
  return PdfState{std::move(out), omega.support, true};
}

PdfState inversion_pdf(const LikelihoodChannel& c, const PdfState& omega, double y,
                       const QuadConfig& cfg) {
  if (c.finite()) {
    int idx = static_cast<int>(y);
    if (idx < 0 || idx >= c.obs_count())
      throw UnknownLabel("inversion_pdf: observation index out of range");
  }
  KernelFn v = c.kernel;
  RandVarC lik = [v, y](double x) { return v(x, y); };
  double z = validity_pdf(omega, lik, cfg);
  if (!(z > kZeroValidity))
    throw ZeroMassObservation("inversion_pdf: observation has zero mass");
  DensityFn f = omega.density;
  DensityFn out = [f, lik, z](double x) { return f(x) * lik(x) / z; };
  return PdfState{std::move(out), omega.support, true};
}

double pushforward_mass(const PdfState& omega, const std::function<double(double)>& g,
                        const Interval& n, const QuadConfig& cfg) {
  return integrate_1d(
      [&](double x) {
        double y = g(x);
        return (y >= n.lo && y <= n.hi) ? omega.density(x) : 0.0;
      },
      omega.support, cfg);
}

double product_integral(const PdfState& omega, const PdfState& rho,
                        const std::function<double(double, double)>& h, bool omega_inner,
                        const QuadConfig& cfg) {
  if (omega_inner) {
    return integrate_1d(
        [&](double y) {
          return integrate_1d([&](double x) { return omega.density(x) * h(x, y); },
                              omega.support, cfg) *
                 rho.density(y);
        },
        rho.support, cfg);
  }
  return integrate_1d(
      [&](double x) {
        return integrate_1d([&](double y) { return rho.density(y) * h(x, y); }, rho.support,
                            cfg) *
               omega.density(x);
      },
      omega.support, cfg);
}

std::function<double(double, double)> graph_compose_kernel(
    const std::function<double(double, double, double)>& v, const PdfChannel& c,
    const QuadConfig& cfg) {
  KernelFn u = c.kernel;
  Interval mid = c.out_support;
  return [u, v, mid, cfg](double x, double z) {
    return integrate_1d([&](double y) { return u(x, y) * v(x, y, z); }, mid, cfg);
  };
}

CdfTable::CdfTable(const PdfState& omega, const Interval& range, int cells) : range_(range) {
  if (cells < 8) throw DomainError("CdfTable: too few cells");
  h_ = range.length() / cells;
  cum_.resize(cells + 1);
  cum_[0] = 0.0;
  // 4-point Gauss-Legendre per cell; plenty for smooth densities at this h.
  static const double gx[4] = {-0.8611363115940526, -0.3399810435848563,
                               0.3399810435848563, 0.8611363115940526};
  static const double gw[4] = {0.3478548451374538, 0.6521451548625461,
                               0.6521451548625461, 0.3478548451374538};
  for (int i = 0; i < cells; ++i) {
    double a = range.lo + i * h_;
    double c = a + 0.5 * h_;
    double s = 0.0;
    for (int j = 0; j < 4; ++j) {
      double x = c + 0.5 * h_ * gx[j];
      double fx = omega.support.contains(x) ? omega.density(x) : 0.0;
      if (!std::isfinite(fx)) fx = 0.0;  // integrable endpoint singularities
      s += gw[j] * fx;
    }
    cum_[i + 1] = cum_[i] + 0.5 * h_ * s;
  }
}

double CdfTable::cdf(double x) const {
  if (x <= range_.lo) return 0.0;
  if (x >= range_.hi) return cum_.back();
  double pos = (x - range_.lo) / h_;
  int i = std::min(static_cast<int>(pos), static_cast<int>(cum_.size()) - 2);
  double frac = pos - i;
  return cum_[i] + frac * (cum_[i + 1] - cum_[i]);
}

double CdfTable::quantile(double p) const {
  double target = p * cum_.back();
  auto it = std::lower_bound(cum_.begin(), cum_.end(), target);
  if (it == cum_.begin()) return range_.lo;
  if (it == cum_.end()) return range_.hi;
  std::size_t i = static_cast<std::size_t>(it - cum_.begin()) - 1;
  double lo = cum_[i], hi = cum_[i + 1];
  double frac = hi > lo ? (target - lo) / (hi - lo) : 0.0;
  return range_.lo + (i + frac) * h_;
}

}  // namespace probchan
