#pragma once

#include <cstdint>
#include <vector>

#include "probchan/conjugacy.hpp"
#include "probchan/discrete.hpp"
#include "probchan/numerics.hpp"

namespace probchan {

// Seeded random instances for property checks.
LabelSet label_range(const std::string& prefix, int count);
FiniteDist random_dist(const LabelSet& space, SeededSampler& sampler);
DiscreteChannel random_channel(const LabelSet& in, const LabelSet& out,
                               SeededSampler& sampler);
RandVarD random_randvar(const LabelSet& space, SeededSampler& sampler, double lo = 0.0,
                        double hi = 1.0);

// Cross-cutting law checks: normalization, the transformation adjunction,
// scalar invariance of updates, update fusion, and the Fubini product rule.
std::vector<CheckReport> property_suite(std::uint64_t seed, const QuadConfig& cfg = {});

}  // namespace probchan
