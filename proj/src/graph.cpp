#include "arcflow/graph.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <sstream>
#include <unordered_map>

#include "arcflow/error.hpp"
#include "arcflow/knapsack.hpp"

namespace arcflow {

std::vector<Item> build_order(const Instance& inst) {
  std::vector<Item> items = inst.items();
  std::stable_sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    if (a.width != b.width) return a.width > b.width;
    return a.original_index < b.original_index;
  });
  return items;
}

namespace {

ArcFlowGraph assemble(int capacity, const std::vector<Item>& order,
                      const std::set<NodeLabel>& nodes, const std::set<Arc>& arcs,
                      NodeLabel source, NodeLabel target) {
  ArcFlowGraph g;
  g.capacity = capacity;
  for (const Item& it : order) {
    g.item_widths.push_back(it.width);
    g.original_index.push_back(it.original_index);
  }
  g.nodes.assign(nodes.begin(), nodes.end());
  g.arcs.assign(arcs.begin(), arcs.end());
  g.source = source;
  g.target = target;
  return g;
}

}  // namespace

ArcFlowGraph build_graph(const Instance& inst) {
  std::vector<Item> order = build_order(inst);
  const int m = static_cast<int>(order.size());
  const int capacity = inst.capacity();
  const NodeLabel target{capacity, m + 1};

  std::set<NodeLabel> nodes;
  std::set<Arc> arcs;

  // memo over raw (x, i) states; node identity is the computed label
  std::vector<NodeLabel> memo(static_cast<std::size_t>(capacity + 1) * static_cast<std::size_t>(m + 1));
  std::vector<bool> seen(memo.size(), false);

  std::function<NodeLabel(int, int)> build = [&](int x, int i) -> NodeLabel {
    if (i > m) return target;
    std::size_t key = static_cast<std::size_t>(x) * static_cast<std::size_t>(m + 1) +
                      static_cast<std::size_t>(i - 1);
    if (seen[key]) return memo[key];

    NodeLabel u = target;
    NodeLabel up{};
    bool have_up = false;
    if (i < m) {  // option 1: skip item i
      up = build(x, i + 1);
      u = up;
      have_up = true;
    }
    int w = order[static_cast<std::size_t>(i - 1)].width;
    if (x + w <= capacity) {  // option 2: use item i
      NodeLabel v = build(x + w, i + 1);
      u = NodeLabel{std::min(u.x, v.x - w), i};
      arcs.insert(Arc{u, v, i});
      nodes.insert(u);
      nodes.insert(v);
      if (have_up && u != up) {
        arcs.insert(Arc{u, up, 0});
        nodes.insert(up);
      }
    }
    seen[key] = true;
    memo[key] = u;
    return u;
  };

  NodeLabel source = build(0, 1);
  nodes.insert(source);
  nodes.insert(target);
  for (const NodeLabel& n : nodes)
    if (n != source && n != target) arcs.insert(Arc{n, target, 0});

  return assemble(capacity, order, nodes, arcs, source, target);
}

namespace {

struct Indexed {
  std::unordered_map<std::int64_t, int> index;
  std::vector<NodeLabel> labels;

  static std::int64_t key(NodeLabel n) {
    return (static_cast<std::int64_t>(n.x) << 32) | static_cast<std::uint32_t>(n.i);
  }
  int of(NodeLabel n) const { return index.at(key(n)); }
  int add(NodeLabel n) {
    auto [it, fresh] = index.try_emplace(key(n), static_cast<int>(labels.size()));
    if (fresh) labels.push_back(n);
    return it->second;
  }
};

// Topological order of node indices; throws on a cycle.
std::vector<int> topo_order(int n_nodes, const std::vector<std::pair<int, int>>& edges) {
  std::vector<int> indeg(static_cast<std::size_t>(n_nodes), 0);
  std::vector<std::vector<int>> out(static_cast<std::size_t>(n_nodes));
  for (auto [t, h] : edges) {
    out[static_cast<std::size_t>(t)].push_back(h);
    ++indeg[static_cast<std::size_t>(h)];
  }
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(n_nodes));
  std::vector<int> ready;
  for (int v = 0; v < n_nodes; ++v)
    if (indeg[static_cast<std::size_t>(v)] == 0) ready.push_back(v);
  while (!ready.empty()) {
    int v = ready.back();
    ready.pop_back();
    order.push_back(v);
    for (int h : out[static_cast<std::size_t>(v)])
      if (--indeg[static_cast<std::size_t>(h)] == 0) ready.push_back(h);
  }
  if (order.size() != static_cast<std::size_t>(n_nodes))
    throw Error("cycle detected in arc-flow graph");
  return order;
}

}  // namespace

ArcFlowGraph compress_final(const ArcFlowGraph& g) {
  if (g.source == g.target) return g;  // trivial graph of an empty instance

  Indexed ix;
  for (const NodeLabel& n : g.nodes) ix.add(n);
  std::vector<std::pair<int, int>> edges;
  edges.reserve(g.arcs.size());
  for (const Arc& a : g.arcs) edges.emplace_back(ix.of(a.tail), ix.of(a.head));
  std::vector<int> order = topo_order(static_cast<int>(g.nodes.size()), edges);

  const int source_ix = ix.of(g.source);
  constexpr int kUnset = -1;
  std::vector<int> phi(g.nodes.size(), kUnset), psi(g.nodes.size(), kUnset);
  phi[static_cast<std::size_t>(source_ix)] = 0;
  psi[static_cast<std::size_t>(source_ix)] = 0;

  // group arcs by tail in topological order and relax the max-labels
  std::vector<std::vector<std::size_t>> arcs_out(g.nodes.size());
  for (std::size_t k = 0; k < g.arcs.size(); ++k)
    arcs_out[static_cast<std::size_t>(ix.of(g.arcs[k].tail))].push_back(k);
  for (int v : order) {
    if (phi[static_cast<std::size_t>(v)] == kUnset) {
      if (v == source_ix) continue;
      throw Error("arc-flow graph has a node unreachable from the source");
    }
    for (std::size_t k : arcs_out[static_cast<std::size_t>(v)]) {
      const Arc& a = g.arcs[k];
      int h = ix.of(a.head);
      int fx = phi[static_cast<std::size_t>(v)] + g.width_of(a.item);
      int fi = std::max(psi[static_cast<std::size_t>(v)], a.item);
      phi[static_cast<std::size_t>(h)] = std::max(phi[static_cast<std::size_t>(h)], fx);
      psi[static_cast<std::size_t>(h)] = std::max(psi[static_cast<std::size_t>(h)], fi);
    }
  }

  const NodeLabel new_target{g.capacity, g.item_count() + 1};
  const int target_ix = ix.of(g.target);
  auto relabel = [&](int v) -> NodeLabel {
    if (v == target_ix) return new_target;  // target stays distinguished
    if (v == source_ix) return NodeLabel{0, 0};
    return NodeLabel{phi[static_cast<std::size_t>(v)], psi[static_cast<std::size_t>(v)]};
  };

  std::set<Arc> new_arcs;
  for (const Arc& a : g.arcs) {
    NodeLabel t = relabel(ix.of(a.tail));
    NodeLabel h = relabel(ix.of(a.head));
    if (t == h) continue;  // merged loss arc
    new_arcs.insert(Arc{t, h, a.item});
  }
  std::set<NodeLabel> new_nodes{NodeLabel{0, 0}, new_target};
  for (const Arc& a : new_arcs) {
    new_nodes.insert(a.tail);
    new_nodes.insert(a.head);
  }

  ArcFlowGraph out;
  out.capacity = g.capacity;
  out.item_widths = g.item_widths;
  out.original_index = g.original_index;
  out.nodes.assign(new_nodes.begin(), new_nodes.end());
  out.arcs.assign(new_arcs.begin(), new_arcs.end());
  out.source = NodeLabel{0, 0};
  out.target = new_target;
  return out;
}

std::set<std::uint64_t> enumerate_paths(const ArcFlowGraph& g, std::size_t max_paths) {
  if (g.item_count() > 63) throw Error("pattern enumeration supports at most 63 items");
  std::set<std::uint64_t> patterns;
  if (g.source == g.target) {
    patterns.insert(0);  // single trivial path
    return patterns;
  }

  Indexed ix;
  for (const NodeLabel& n : g.nodes) ix.add(n);
  std::vector<std::vector<const Arc*>> out(g.nodes.size());
  for (const Arc& a : g.arcs) out[static_cast<std::size_t>(ix.of(a.tail))].push_back(&a);
  const int target_ix = ix.of(g.target);

  std::size_t n_paths = 0;
  std::function<void(int, std::uint64_t)> walk = [&](int v, std::uint64_t mask) {
    if (v == target_ix) {
      if (++n_paths > max_paths) throw Error("path limit exceeded");
      patterns.insert(mask);
      return;
    }
    for (const Arc* a : out[static_cast<std::size_t>(v)]) {
      std::uint64_t next = mask;
      if (a->item >= 1)
        next |= 1ULL << g.original_index[static_cast<std::size_t>(a->item - 1)];
      walk(ix.of(a->head), next);
    }
  };
  walk(ix.of(g.source), 0);
  return patterns;
}

GraphStats graph_stats(const ArcFlowGraph& g, const Instance& inst) {
  ArcFlowGraph dp = dp_graph(inst);
  GraphStats s;
  s.n_vertices = g.node_count();
  s.n_arcs = g.arc_count();
  s.ratio_v = dp.node_count() == 0 ? 1.0
                                   : static_cast<double>(s.n_vertices) /
                                         static_cast<double>(dp.node_count());
  if (dp.arc_count() == 0)
    s.ratio_a = s.n_arcs == 0 ? 1.0 : std::numeric_limits<double>::infinity();
  else
    s.ratio_a = static_cast<double>(s.n_arcs) / static_cast<double>(dp.arc_count());
  return s;
}

std::string export_dot(const ArcFlowGraph& g) {
  std::ostringstream os;
  auto name = [](const NodeLabel& n) {
    std::ostringstream s;
    s << '"' << n.x << ',' << n.i << '"';
    return s.str();
  };
  os << "digraph arcflow {\n";
  os << "  rankdir=LR;\n";
  for (const NodeLabel& n : g.nodes) {
    os << "  " << name(n) << " [label=\"(" << n.x << ',' << n.i << ")\"";
    if (n == g.source || n == g.target) os << ", shape=doublecircle";
    os << "];\n";
  }
  for (const Arc& a : g.arcs) {
    os << "  " << name(a.tail) << " -> " << name(a.head) << " [label=\"" << a.item << '"';
    if (a.item == 0) os << ", style=dashed";
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

std::vector<std::size_t> route_pattern(const ArcFlowGraph& g, const std::vector<int>& items) {
  for (std::size_t k = 0; k + 1 < items.size(); ++k)
    if (items[k] >= items[k + 1]) throw Error("route_pattern expects increasing item indices");
  if (g.source == g.target) return {};

  Indexed ix;
  for (const NodeLabel& n : g.nodes) ix.add(n);
  std::vector<std::vector<std::size_t>> out(g.nodes.size());
  for (std::size_t k = 0; k < g.arcs.size(); ++k)
    out[static_cast<std::size_t>(ix.of(g.arcs[k].tail))].push_back(k);
  const int target_ix = ix.of(g.target);

  // (node, #items placed) states that provably fail
  std::set<std::pair<int, std::size_t>> dead;
  std::vector<std::size_t> path;
  std::function<bool(int, std::size_t)> walk = [&](int v, std::size_t pos) -> bool {
    if (v == target_ix) return pos == items.size();
    if (dead.count({v, pos})) return false;
    for (std::size_t k : out[static_cast<std::size_t>(v)]) {
      const Arc& a = g.arcs[k];
      std::size_t next = pos;
      if (a.item >= 1) {
        if (pos == items.size() || a.item != items[pos]) continue;
        next = pos + 1;
      }
      path.push_back(k);
      if (walk(ix.of(a.head), next)) return true;
      path.pop_back();
    }
    dead.insert({v, pos});
    return false;
  };
  if (!walk(ix.of(g.source), 0)) return {};
  return path;
}

}  // namespace arcflow
