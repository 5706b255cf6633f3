#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "arcflow/graph.hpp"
#include "arcflow/lp.hpp"

namespace arcflow {

/// Integer minimum-flow model over an arc-flow graph: one conservation
/// equality per vertex (the feedback variable z leaves the source and enters
/// the target), one >= demand row per item type. Column j < z_col is the
/// flow on graph.arcs[j]; z_col is z.
struct MilpModel {
  ArcFlowGraph graph;
  LinearProgram lp;
  int z_col = 0;
  std::vector<std::int64_t> demand_sorted;    // by build item index 1..m
  std::vector<std::int64_t> demand_original;  // by instance position
  int n_conservation_rows = 0;
};

enum class MilpStatus { Optimal, Infeasible, Limit };

struct MilpSolution {
  MilpStatus status = MilpStatus::Limit;
  std::int64_t objective = 0;       // bins used (z)
  std::vector<std::int64_t> flows;  // per arc, graph.arcs order
  double lp_bound = 0.0;            // root relaxation objective
  std::int64_t nodes_explored = 0;
};

/// Patterns over the original item positions with multiplicities.
struct PatternSolution {
  std::vector<std::pair<std::vector<std::uint8_t>, std::int64_t>> patterns;
  std::int64_t total_bins = 0;
};

struct SolveLimits {
  double time_limit_sec = std::numeric_limits<double>::infinity();
  std::int64_t node_limit = std::numeric_limits<std::int64_t>::max();
};

/// Assembles the arc-flow model for the given per-original-item demands.
MilpModel build_model(const ArcFlowGraph& g, const std::vector<std::int64_t>& demands);

/// Branch-and-bound over the LP relaxation: best-bound node selection with
/// depth-first tie-breaking, branching on the most fractional variable via
/// bound changes, pruning with ceil(node bound - 1e-6) against the
/// incumbent. The initial incumbent comes from a greedy packing plus an
/// LP-rounding pass. At Optimal the objective is the exact integer minimum.
MilpSolution solve(const MilpModel& model, const SolveLimits& limits = {});

/// Splits an integral conserving s-t flow of value z into unit paths
/// (bottleneck extraction) and returns (path arc indices, multiplicity)
/// pairs. Throws Error on a non-conserving flow.
std::vector<std::pair<std::vector<std::size_t>, std::int64_t>> decompose_paths(
    const ArcFlowGraph& g, const std::vector<std::int64_t>& flows, std::int64_t z);

/// decompose_paths mapped to binary patterns over original item positions;
/// identical patterns are merged.
PatternSolution decompose_flow(const ArcFlowGraph& g, const std::vector<std::int64_t>& flows,
                               std::int64_t z);

/// CPLEX-style LP file with deterministic variable order. Flow variables are
/// named f_<tailx>_<taili>__<headx>_<headi>__<item>.
std::string export_lp_file(const MilpModel& model);

}  // namespace arcflow
