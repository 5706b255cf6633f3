#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "arcflow/graph.hpp"
#include "arcflow/instance.hpp"

namespace arcflow {

/// The (m+1) x (W+1) table of the 0-1 knapsack recurrence. Row 0 is all
/// zeros and each row is non-decreasing in the capacity index.
struct DpTable {
  int m = 0;
  int capacity = 0;
  std::vector<double> values;

  double at(int i, int p) const {
    return values[static_cast<std::size_t>(i) * static_cast<std::size_t>(capacity + 1) +
                  static_cast<std::size_t>(p)];
  }
};

DpTable knapsack_table(const std::vector<int>& weights, const std::vector<double>& values,
                       int capacity);

/// Maximum of sum v_i a_i over binary a with sum w_i a_i <= capacity.
/// Exact for any real values; O(W m).
double knapsack_max(const std::vector<int>& weights, const std::vector<double>& values,
                    int capacity);

/// knapsack_max plus a witness pattern obtained by backtracking. On a value
/// tie (within 1e-12) the item is not taken, so output is deterministic and
/// columns stay sparse. The profit is recomputed from the pattern.
std::pair<double, std::vector<std::uint8_t>> knapsack_pattern(const std::vector<int>& weights,
                                                              const std::vector<double>& values,
                                                              int capacity);

/// The plain dynamic programming search space as a graph: states (space, level)
/// with a skip and a take arc each, all terminal states merged into the
/// target. Items are taken in build order (decreasing width) so its size is
/// directly comparable with build_graph's; this graph is the denominator of
/// the compression ratios.
ArcFlowGraph dp_graph(const Instance& inst);

}  // namespace arcflow
