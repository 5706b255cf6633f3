#include "arcflow/knapsack.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "arcflow/error.hpp"

namespace arcflow {

namespace {

constexpr double kTieTol = 1e-12;

void check_inputs(const std::vector<int>& weights, const std::vector<double>& values,
                  int capacity) {
  if (weights.size() != values.size())
    throw Error("knapsack weights and values must have equal length");
  if (capacity < 0) throw Error("knapsack capacity must be nonnegative");
  for (int w : weights)
    if (w < 1) throw Error("knapsack weights must be positive");
}

}  // namespace

DpTable knapsack_table(const std::vector<int>& weights, const std::vector<double>& values,
                       int capacity) {
  check_inputs(weights, values, capacity);
  const int m = static_cast<int>(weights.size());
  DpTable t;
  t.m = m;
  t.capacity = capacity;
  t.values.assign(static_cast<std::size_t>(m + 1) * static_cast<std::size_t>(capacity + 1), 0.0);
  auto cell = [&](int i, int p) -> double& {
    return t.values[static_cast<std::size_t>(i) * static_cast<std::size_t>(capacity + 1) +
                    static_cast<std::size_t>(p)];
  };
  for (int i = 1; i <= m; ++i) {
    const int w = weights[static_cast<std::size_t>(i - 1)];
    const double v = values[static_cast<std::size_t>(i - 1)];
    for (int p = 0; p <= capacity; ++p) {
      if (p < w)
        cell(i, p) = cell(i - 1, p);
      else
        cell(i, p) = std::max(cell(i - 1, p), cell(i - 1, p - w) + v);
    }
  }
  return t;
}

double knapsack_max(const std::vector<int>& weights, const std::vector<double>& values,
                    int capacity) {
  if (weights.empty()) {
    check_inputs(weights, values, capacity);
    return 0.0;
  }
  DpTable t = knapsack_table(weights, values, capacity);
  double best = 0.0;
  for (int p = 0; p <= capacity; ++p) best = std::max(best, t.at(t.m, p));
  return best;
}

std::pair<double, std::vector<std::uint8_t>> knapsack_pattern(const std::vector<int>& weights,
                                                              const std::vector<double>& values,
                                                              int capacity) {
  check_inputs(weights, values, capacity);
  const int m = static_cast<int>(weights.size());
  std::vector<std::uint8_t> pattern(static_cast<std::size_t>(m), 0);
  if (m == 0) return {0.0, pattern};

  DpTable t = knapsack_table(weights, values, capacity);
  int p = capacity;
  for (int i = m; i >= 1; --i) {
    const int w = weights[static_cast<std::size_t>(i - 1)];
    const double v = values[static_cast<std::size_t>(i - 1)];
    if (p < w) continue;
    // tie-break: keep the item out when skipping is just as good
    if (t.at(i - 1, p - w) + v > t.at(i - 1, p) + kTieTol) {
      pattern[static_cast<std::size_t>(i - 1)] = 1;
      p -= w;
    }
  }
  double profit = 0.0;
  for (int i = 0; i < m; ++i)
    if (pattern[static_cast<std::size_t>(i)]) profit += values[static_cast<std::size_t>(i)];
  return {profit, pattern};
}

ArcFlowGraph dp_graph(const Instance& inst) {
  std::vector<Item> order = build_order(inst);
  const int m = static_cast<int>(order.size());
  const int capacity = inst.capacity();
  const NodeLabel target{capacity, m + 1};

  ArcFlowGraph g;
  g.capacity = capacity;
  for (const Item& it : order) {
    g.item_widths.push_back(it.width);
    g.original_index.push_back(it.original_index);
  }
  g.target = target;
  if (m == 0) {
    g.source = target;
    g.nodes = {target};
    return g;
  }
  g.source = NodeLabel{0, 0};

  std::set<NodeLabel> nodes{target};
  std::set<Arc> arcs;
  std::vector<bool> reachable(static_cast<std::size_t>(capacity + 1), false);
  reachable[0] = true;
  for (int level = 0; level < m; ++level) {
    const int w = order[static_cast<std::size_t>(level)].width;
    std::vector<bool> next(static_cast<std::size_t>(capacity + 1), false);
    for (int p = 0; p <= capacity; ++p) {
      if (!reachable[static_cast<std::size_t>(p)]) continue;
      NodeLabel here{p, level};
      nodes.insert(here);
      NodeLabel skip_to = level + 1 == m ? target : NodeLabel{p, level + 1};
      arcs.insert(Arc{here, skip_to, 0});
      if (p + w <= capacity) {
        NodeLabel take_to = level + 1 == m ? target : NodeLabel{p + w, level + 1};
        arcs.insert(Arc{here, take_to, level + 1});
        next[static_cast<std::size_t>(p + w)] = true;
      }
      next[static_cast<std::size_t>(p)] = true;
    }
    reachable = std::move(next);
  }
  g.nodes.assign(nodes.begin(), nodes.end());
  g.arcs.assign(arcs.begin(), arcs.end());
  return g;
}

}  // namespace arcflow
