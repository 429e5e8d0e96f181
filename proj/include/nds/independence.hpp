#pragma once

#include "nds/system.hpp"

namespace nds {

// P_1, ..., P_horizon with k cells each such that every cell of
// ⋁_{i<n} f_1^{-i} P_{i+1} is split by f_1^{-n} P_{n+1} into k parts of equal
// μ_1-mass, so H_n = n log k. Needs atomless μ_1 and injective maps.
PartitionSequence independent_refinement_sequence(const MeasureSequence& mu, std::int64_t k, std::size_t horizon);

// Splits s into k consecutive pieces of equal μ-mass (cuts at the leftmost
// quantile); μ must be atomless on s.
std::vector<IntervalSet> equal_mass_split(const RationalMeasure& mu, const IntervalSet& s, std::int64_t k);

bool is_injective(const PiecewiseLinearMap& f);

}  // namespace nds
