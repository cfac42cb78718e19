#include "probchan/discrete.hpp"

#include <algorithm>
#include <cmath>

namespace probchan {

namespace {

constexpr double kPrune = 1e-15;
constexpr double kZeroValidity = 1e-300;

LabelSet sorted_unique(LabelSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

bool contains(const LabelSet& s, const Label& x) {
  return std::binary_search(s.begin(), s.end(), x);
}

void require_same_carrier(const LabelSet& a, const LabelSet& b, const char* what) {
  if (a != b) throw CarrierMismatch(std::string(what) + ": carriers differ");
}

}  // namespace

Label pair_label(const Label& a, const Label& b) { return "(" + a + "," + b + ")"; }

LabelSet product_space(const LabelSet& a, const LabelSet& b) {
  LabelSet out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) out.push_back(pair_label(x, y));
  return sorted_unique(std::move(out));
}

FiniteDist::FiniteDist(LabelSet carrier, std::map<Label, double> weights)
    : carrier_(sorted_unique(std::move(carrier))) {
  if (carrier_.empty()) throw DomainError("FiniteDist: empty carrier");
  double total = 0.0;
  for (const auto& [x, w] : weights) {
    if (!contains(carrier_, x)) throw UnknownLabel("FiniteDist: label outside carrier: " + x);
    if (!(w >= 0.0)) throw DomainError("FiniteDist: negative weight at " + x);
    total += w;
  }
  if (!(total > 0.0) || std::abs(total - 1.0) > 1e-9)
    throw DomainError("FiniteDist: weights must sum to 1");
  for (const auto& [x, w] : weights) {
    double v = w / total;
    if (v > kPrune) weights_[x] = v;
  }
  if (weights_.empty()) throw DomainError("FiniteDist: empty support after pruning");
}

double FiniteDist::prob(const Label& x) const {
  if (!contains(carrier_, x)) throw UnknownLabel("FiniteDist::prob: " + x);
  auto it = weights_.find(x);
  return it == weights_.end() ? 0.0 : it->second;
}

DiscreteChannel::DiscreteChannel(LabelSet input_space, LabelSet output_space,
                                 std::map<Label, FiniteDist> kernel)
    : input_space_(sorted_unique(std::move(input_space))),
      output_space_(sorted_unique(std::move(output_space))),
      kernel_(std::move(kernel)) {
  for (const auto& x : input_space_) {
    auto it = kernel_.find(x);
    if (it == kernel_.end())
      throw DomainError("DiscreteChannel: missing row for input " + x);
    if (it->second.carrier() != output_space_)
      throw CarrierMismatch("DiscreteChannel: row carrier mismatch at " + x);
  }
}

const FiniteDist& DiscreteChannel::row(const Label& x) const {
  auto it = kernel_.find(x);
  if (it == kernel_.end()) throw UnknownLabel("DiscreteChannel::row: " + x);
  return it->second;
}

double RandVarD::at(const Label& x) const {
  auto it = values.find(x);
  if (it == values.end()) throw UnknownLabel("RandVarD::at: " + x);
  return it->second;
}

FiniteDist dirac(const LabelSet& space, const Label& x) {
  if (!contains(sorted_unique(space), x)) throw UnknownLabel("dirac: " + x);
  return FiniteDist(space, {{x, 1.0}});
}

DiscreteChannel identity_channel(const LabelSet& space) {
  std::map<Label, FiniteDist> rows;
  for (const auto& x : space) rows.emplace(x, dirac(space, x));
  return DiscreteChannel(space, space, std::move(rows));
}

FiniteDist push(const DiscreteChannel& c, const FiniteDist& omega) {
  require_same_carrier(omega.carrier(), c.input_space(), "push");
  std::map<Label, double> out;
  for (const auto& [x, wx] : omega.weights())
    for (const auto& [y, p] : c.row(x).weights()) out[y] += wx * p;
  return FiniteDist(c.output_space(), std::move(out));
}

DiscreteChannel compose(const DiscreteChannel& d, const DiscreteChannel& c) {
  require_same_carrier(c.output_space(), d.input_space(), "compose");
  std::map<Label, FiniteDist> rows;
  for (const auto& x : c.input_space()) rows.emplace(x, push(d, c.row(x)));
  return DiscreteChannel(c.input_space(), d.output_space(), std::move(rows));
}

DiscreteChannel copy_channel(const LabelSet& space) {
  LabelSet out = product_space(space, space);
  std::map<Label, FiniteDist> rows;
  for (const auto& x : space) rows.emplace(x, dirac(out, pair_label(x, x)));
  return DiscreteChannel(space, out, std::move(rows));
}

DiscreteChannel tensor(const DiscreteChannel& c, const DiscreteChannel& d) {
  LabelSet in = product_space(c.input_space(), d.input_space());
  LabelSet out = product_space(c.output_space(), d.output_space());
  std::map<Label, FiniteDist> rows;
  for (const auto& x : c.input_space()) {
    for (const auto& a : d.input_space()) {
      std::map<Label, double> w;
      for (const auto& [y, py] : c.row(x).weights())
        for (const auto& [b, pb] : d.row(a).weights())
          w[pair_label(y, b)] = py * pb;
      rows.emplace(pair_label(x, a), FiniteDist(out, std::move(w)));
    }
  }
  return DiscreteChannel(in, out, std::move(rows));
}

DiscreteChannel tuple_channel(const DiscreteChannel& c, const DiscreteChannel& d) {
  require_same_carrier(c.input_space(), d.input_space(), "tuple_channel");
  return compose(tensor(c, d), copy_channel(c.input_space()));
}

double validity(const FiniteDist& omega, const RandVarD& r) {
  require_same_carrier(omega.carrier(), r.carrier, "validity");
  double sum = 0.0;
  for (const auto& [x, w] : omega.weights()) sum += w * r.at(x);
  return sum;
}

RandVarD pull(const DiscreteChannel& c, const RandVarD& r) {
  require_same_carrier(c.output_space(), r.carrier, "pull");
  RandVarD out;
  out.carrier = c.input_space();
  for (const auto& x : c.input_space()) {
    double sum = 0.0;
    for (const auto& [y, p] : c.row(x).weights()) sum += p * r.at(y);
    out.values[x] = sum;
  }
  return out;
}

FiniteDist update(const FiniteDist& omega, const RandVarD& r) {
  require_same_carrier(omega.carrier(), r.carrier, "update");
  for (const auto& [x, w] : omega.weights())
    if (r.at(x) < 0.0) throw DomainError("update: random variable negative on support");
  double z = validity(omega, r);
  if (!(z > kZeroValidity)) throw ZeroValidity("update: conditioning on impossible observation");
  std::map<Label, double> out;
  for (const auto& [x, w] : omega.weights()) out[x] = w * r.at(x) / z;
  return FiniteDist(omega.carrier(), std::move(out));
}

RandVarD rv_and(const RandVarD& r, const RandVarD& s) {
  require_same_carrier(r.carrier, s.carrier, "rv_and");
  RandVarD out;
  out.carrier = r.carrier;
  for (const auto& x : r.carrier) out.values[x] = r.at(x) * s.at(x);
  return out;
}

RandVarD rv_scale(double a, const RandVarD& r) {
  RandVarD out;
  out.carrier = r.carrier;
  for (const auto& x : r.carrier) out.values[x] = a * r.at(x);
  return out;
}

RandVarD constant_rv(const LabelSet& space, double value) {
  RandVarD out;
  out.carrier = sorted_unique(space);
  for (const auto& x : out.carrier) out.values[x] = value;
  return out;
}

RandVarD point_predicate(const LabelSet& space, const Label& y) {
  RandVarD out = constant_rv(space, 0.0);
  if (out.values.find(y) == out.values.end())
    throw UnknownLabel("point_predicate: " + y);
  out.values[y] = 1.0;
  return out;
}

FiniteDist inversion_at(const DiscreteChannel& c, const FiniteDist& omega, const Label& y) {
  require_same_carrier(omega.carrier(), c.input_space(), "inversion");
  if (!contains(c.output_space(), y)) throw UnknownLabel("inversion_at: " + y);
  FiniteDist pushed = push(c, omega);
  double denom = pushed.prob(y);
  if (!(denom > kZeroValidity))
    throw ZeroMassObservation("inversion at zero-mass observation " + y);
  std::map<Label, double> out;
  for (const auto& [x, w] : omega.weights()) out[x] = w * c.row(x).prob(y) / denom;
  return FiniteDist(omega.carrier(), std::move(out));
}

DiscreteChannel inversion(const DiscreteChannel& c, const FiniteDist& omega) {
  FiniteDist pushed = push(c, omega);
  LabelSet in;
  std::map<Label, FiniteDist> rows;
  for (const auto& y : c.output_space()) {
    if (pushed.prob(y) > kZeroValidity) {
      in.push_back(y);
      rows.emplace(y, inversion_at(c, omega, y));
    }
  }
  if (in.empty()) throw ZeroMassObservation("inversion: pushforward has empty support");
  return DiscreteChannel(in, omega.carrier(), std::move(rows));
}

double total_variation(const FiniteDist& a, const FiniteDist& b) {
  require_same_carrier(a.carrier(), b.carrier(), "total_variation");
  double sum = 0.0;
  for (const auto& x : a.carrier()) sum += std::abs(a.prob(x) - b.prob(x));
  return 0.5 * sum;
}

}  // namespace probchan
