#pragma once

#include <compare>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "arcflow/instance.hpp"

namespace arcflow {

/// Node label (x, i): sub-patterns reaching the node use at most x space and
/// the node's outgoing item arcs carry items with index >= i. The target of
/// every graph is the distinguished label (W, m+1); the source of a
/// compressed graph is (0, 0).
struct NodeLabel {
  int x = 0;
  int i = 0;

  auto operator<=>(const NodeLabel&) const = default;
};

/// Directed arc (tail, head, item). item == 0 is a loss arc of width zero;
/// item k >= 1 consumes one unit of item k and w_k units of space.
struct Arc {
  NodeLabel tail;
  NodeLabel head;
  int item = 0;

  auto operator<=>(const Arc&) const = default;
};

/// Acyclic multigraph whose source-target paths are exactly the feasible
/// binary patterns. Arcs have set semantics: parallel arcs must differ in
/// their item index. Items are indexed 1..m in the build order (decreasing
/// width); original_index maps a build index back to the instance position.
struct ArcFlowGraph {
  int capacity = 0;
  std::vector<int> item_widths;      // item_widths[k-1] = width of build item k
  std::vector<int> original_index;   // original_index[k-1] = instance position
  std::vector<NodeLabel> nodes;      // sorted, unique
  std::vector<Arc> arcs;             // sorted, unique
  NodeLabel source;
  NodeLabel target;

  int item_count() const { return static_cast<int>(item_widths.size()); }
  int width_of(int item) const { return item == 0 ? 0 : item_widths[static_cast<std::size_t>(item - 1)]; }
  std::size_t node_count() const { return nodes.size(); }
  std::size_t arc_count() const { return arcs.size(); }
};

struct GraphStats {
  std::size_t n_vertices = 0;
  std::size_t n_arcs = 0;
  double ratio_v = 0.0;  // vs. the plain dynamic programming graph
  double ratio_a = 0.0;
};

/// Items in graph build order: decreasing width, ties by increasing original
/// position.
std::vector<Item> build_order(const Instance& inst);

/// Builds the compressed arc-flow graph directly from the instance with the
/// memoized recursion over (space used, next item) states. Loss arcs connect
/// each internal node to the skip alternative and to the target.
ArcFlowGraph build_graph(const Instance& inst);

/// Final compression: relabels every node with (longest path from the
/// source, highest item index on any path from the source), merging nodes
/// whose labels collide. The target stays distinguished; self-loops produced
/// by merging are dropped. Never increases node or arc counts and never
/// loses a pattern. Throws Error on a cyclic input.
ArcFlowGraph compress_final(const ArcFlowGraph& g);

/// All source-target paths as binary patterns over the *original* item
/// positions (bit k = instance item k), deduplicated. Loss arcs contribute
/// nothing. Throws Error when the number of paths exceeds max_paths.
std::set<std::uint64_t> enumerate_paths(const ArcFlowGraph& g, std::size_t max_paths);

/// Node/arc counts of g and their ratios to the dynamic programming graph of
/// the instance (the compression metrics).
GraphStats graph_stats(const ArcFlowGraph& g, const Instance& inst);

/// Deterministic DOT rendering; loss arcs are dashed, nodes labeled "(x,i)".
std::string export_dot(const ArcFlowGraph& g);

/// Finds a source-target path using exactly the build-order items in
/// `items` (strictly increasing indices in 1..m). Returns indices into
/// g.arcs, or an empty vector when no such path exists.
std::vector<std::size_t> route_pattern(const ArcFlowGraph& g, const std::vector<int>& items);

}  // namespace arcflow
