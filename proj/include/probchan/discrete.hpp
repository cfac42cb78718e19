#pragma once

#include <map>
#include <string>
#include <vector>

#include "probchan/errors.hpp"

namespace probchan {

using Label = std::string;
using LabelSet = std::vector<Label>;  // kept sorted

// Combined label for elements of a product space.
Label pair_label(const Label& a, const Label& b);
LabelSet product_space(const LabelSet& a, const LabelSet& b);

// Finite-support probability distribution over a fixed carrier.
// Weights are non-negative, sum to one, and entries below 1e-15 are pruned
// after renormalization. Immutable after construction.
class FiniteDist {
 public:
  FiniteDist(LabelSet carrier, std::map<Label, double> weights);

  double prob(const Label& x) const;
  const std::map<Label, double>& weights() const { return weights_; }
  const LabelSet& carrier() const { return carrier_; }

 private:
  LabelSet carrier_;
  std::map<Label, double> weights_;
};

// Row-stochastic kernel: one FiniteDist over the output space per input label.
class DiscreteChannel {
 public:
  DiscreteChannel(LabelSet input_space, LabelSet output_space,
                  std::map<Label, FiniteDist> kernel);

  const FiniteDist& row(const Label& x) const;
  const LabelSet& input_space() const { return input_space_; }
  const LabelSet& output_space() const { return output_space_; }

 private:
  LabelSet input_space_;
  LabelSet output_space_;
  std::map<Label, FiniteDist> kernel_;
};

// Real-valued function on a carrier; a predicate when range lies in [0, 1].
struct RandVarD {
  LabelSet carrier;
  std::map<Label, double> values;

  double at(const Label& x) const;
};

FiniteDist dirac(const LabelSet& space, const Label& x);
DiscreteChannel identity_channel(const LabelSet& space);

// c >> omega
FiniteDist push(const DiscreteChannel& c, const FiniteDist& omega);

// d o c
DiscreteChannel compose(const DiscreteChannel& d, const DiscreteChannel& c);

// x |-> 1|x,x>
DiscreteChannel copy_channel(const LabelSet& space);

// (c (x) d)(x,a)(y,b) = c(x)(y) * d(a)(b)
DiscreteChannel tensor(const DiscreteChannel& c, const DiscreteChannel& d);

// <c, d> = (c (x) d) o copy; requires equal input spaces.
DiscreteChannel tuple_channel(const DiscreteChannel& c, const DiscreteChannel& d);

// omega |= r
double validity(const FiniteDist& omega, const RandVarD& r);

// c << r
RandVarD pull(const DiscreteChannel& c, const RandVarD& r);

// omega|_r
FiniteDist update(const FiniteDist& omega, const RandVarD& r);

RandVarD rv_and(const RandVarD& r, const RandVarD& s);
RandVarD rv_scale(double a, const RandVarD& r);
RandVarD constant_rv(const LabelSet& space, double value);
RandVarD point_predicate(const LabelSet& space, const Label& y);

// Bayesian inversion c^dag_omega. Outputs with zero pushforward mass are
// excluded from the inverse's input space.
DiscreteChannel inversion(const DiscreteChannel& c, const FiniteDist& omega);

// Single column of the inversion; throws ZeroMassObservation at impossible y.
FiniteDist inversion_at(const DiscreteChannel& c, const FiniteDist& omega, const Label& y);

// Total variation distance; requires equal carriers.
double total_variation(const FiniteDist& a, const FiniteDist& b);

}  // namespace probchan
