#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "probchan/errors.hpp"
#include "probchan/numerics.hpp"

namespace probchan {

using DensityFn = std::function<double(double)>;
using KernelFn = std::function<double(double, double)>;
using RandVarC = std::function<double(double)>;

// Density-represented state on a real interval. The density closure is the
// representation; grids appear only in comparisons.
struct PdfState {
  DensityFn density;
  Interval support;
  bool norm_checked = false;
};

// Verifies the normalization (within 1e-6) and marks the state checked.
PdfState make_pdf_state(DensityFn density, const Interval& support,
                        const QuadConfig& cfg = {});

// State constructed from an unnormalized non-negative function; the
// normalization constant is computed once and cached in the closure.
PdfState normalize_pdf_state(const DensityFn& unnormalized, const Interval& support,
                             const QuadConfig& cfg = {});

double state_mass(const PdfState& omega, const Interval& m, const QuadConfig& cfg = {});

// Continuous-to-continuous pdf-channel with kernel u(x, y).
struct PdfChannel {
  KernelFn kernel;
  Interval in_support;
  Interval out_support;
};

// Statistical model X -> O where O is either a finite label set (exact
// sums on the observation side) or a truncated real window.
struct LikelihoodChannel {
  KernelFn kernel;  // v(x, y); for finite obs, y is the label index
  std::optional<std::vector<std::string>> finite_obs;
  Interval obs_window{0.0, 1.0};  // used only when finite_obs is empty

  bool finite() const { return finite_obs.has_value(); }
  int obs_count() const { return finite_obs ? static_cast<int>(finite_obs->size()) : -1; }
};

// c >> omega with output density y |-> int f(x) u(x,y) dx.
PdfState push_pdf(const PdfChannel& c, const PdfState& omega, const QuadConfig& cfg = {});

// d o c with kernel (x,z) |-> int u(x,y) v(y,z) dy.
PdfChannel compose_pdf(const PdfChannel& d, const PdfChannel& c, const QuadConfig& cfg = {});

// Joint state <id, c> >> omega. Masses of rectangles M x N via iterated
// integration; the observation side is an exact sum for finite obs spaces.
struct JointState {
  std::function<double(const Interval&, const Interval&)> rect_mass;
  std::function<double(const Interval&, int)> cell_mass;
  bool finite_obs = false;
};

JointState graph_push(const PdfChannel& c, const PdfState& omega, const QuadConfig& cfg = {});
JointState graph_push(const LikelihoodChannel& c, const PdfState& omega,
                      const QuadConfig& cfg = {});

// omega |= r
double validity_pdf(const PdfState& omega, const RandVarC& r, const QuadConfig& cfg = {});

// c << r; finite-observation overload takes r as a value per label.
RandVarC pull_pdf(const LikelihoodChannel& c, const std::vector<double>& r);
RandVarC pull_pdf(const LikelihoodChannel& c, const RandVarC& r, const QuadConfig& cfg = {});

// omega|_r with density f r / (omega |= r); normalization cached.
PdfState update_pdf(const PdfState& omega, const RandVarC& r, const QuadConfig& cfg = {});

// Posterior of `omega` under likelihood channel `c` at observation y
// (label index for finite obs, real value otherwise).
PdfState inversion_pdf(const LikelihoodChannel& c, const PdfState& omega, double y,
                       const QuadConfig& cfg = {});

// omega(g^-1(N)) for a measurable g, computed as int 1_N(g(x)) f(x) dx.
double pushforward_mass(const PdfState& omega, const std::function<double(double)>& g,
                        const Interval& n, const QuadConfig& cfg = {});

// int int h d omega d rho, with selectable iteration order (Fubini probe).
double product_integral(const PdfState& omega, const PdfState& rho,
                        const std::function<double(double, double)>& h,
                        bool omega_inner, const QuadConfig& cfg = {});

// Kernel of d o <id, c> for a two-argument channel d = int v(x, y, z).
// Returns (x, z) |-> int u(x,y) v(x,y,z) dy.
std::function<double(double, double)> graph_compose_kernel(
    const std::function<double(double, double, double)>& v, const PdfChannel& c,
    const QuadConfig& cfg = {});

// Cumulative distribution table for quantile and CDF probes.
class CdfTable {
 public:
  CdfTable(const PdfState& omega, const Interval& range, int cells = 4096);

  double cdf(double x) const;
  double quantile(double p) const;

 private:
  Interval range_;
  std::vector<double> cum_;  // cum_[i] = mass of [lo, lo + i*h]
  double h_;
};

}  // namespace probchan
