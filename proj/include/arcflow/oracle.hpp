#pragma once

#include <cstdint>
#include <vector>

#include "arcflow/instance.hpp"

namespace arcflow {

// Brute-force ground truth used by the test suites. Deliberately simple and
// independent of the solver code paths it is used to check.

/// All binary patterns a in {0,1}^m with sum a_i w_i <= W, as bitmasks over
/// the instance's item positions (bit k = item k). Includes the empty
/// pattern. Guard: m <= 20.
std::vector<std::uint64_t> enumerate_all_patterns(const Instance& inst);

/// Exact minimum number of patterns covering all demands, by depth-first
/// search over residual demand vectors with a dominance memo and
/// max-demand / area lower bounds. Guards: m <= 10 and total demand <= 60.
std::int64_t exact_solve_small(const Instance& inst);

/// Sorted widths of the items selected by a pattern bitmask. Pattern sets of
/// different provenance are compared as width multisets.
std::vector<int> width_multiset(const Instance& inst, std::uint64_t mask);

}  // namespace arcflow
