#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nds/verify.hpp"

namespace nds {

struct SuiteOptions {
    std::optional<std::size_t> k;  // power-rule suites: run only this k
    unsigned threads = 1;
};

// Named theorem suites at their default operating points.
std::vector<std::string> suite_names();
// "all" runs every suite in order; unknown names throw ArgumentError.
std::vector<TheoremReport> run_suite(std::string_view name, const SuiteOptions& opts = {});

// Shared operating points.
TopologicalOptions default_topological_options();
PiecewiseLinearMap glued_map();  // 2x mod 1/2 on [0,1/2), tent on [1/2,1]
std::vector<PartitionSequence> dyadic_family(SpaceKind space, int from_level, int to_level);

}  // namespace nds
