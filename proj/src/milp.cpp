#include "arcflow/milp.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <queue>
#include <sstream>
#include <unordered_map>

#include "arcflow/error.hpp"

namespace arcflow {

namespace {

constexpr double kIntTol = 1e-6;

std::int64_t node_index_key(NodeLabel n) {
  return (static_cast<std::int64_t>(n.x) << 32) | static_cast<std::uint32_t>(n.i);
}

std::unordered_map<std::int64_t, int> index_nodes(const ArcFlowGraph& g) {
  std::unordered_map<std::int64_t, int> ix;
  ix.reserve(g.nodes.size() * 2);
  for (std::size_t k = 0; k < g.nodes.size(); ++k)
    ix.emplace(node_index_key(g.nodes[k]), static_cast<int>(k));
  return ix;
}

}  // namespace

MilpModel build_model(const ArcFlowGraph& g, const std::vector<std::int64_t>& demands) {
  if (demands.size() != g.item_widths.size())
    throw Error("demand vector length does not match the graph's item count");
  for (std::int64_t b : demands)
    if (b < 1) throw Error("demands must be positive");

  MilpModel model;
  model.graph = g;
  model.demand_original = demands;
  model.demand_sorted.resize(demands.size());
  for (std::size_t k = 0; k < demands.size(); ++k)
    model.demand_sorted[k] = demands[static_cast<std::size_t>(g.original_index[k])];

  auto ix = index_nodes(g);
  const int n_nodes = static_cast<int>(g.nodes.size());
  const int m = g.item_count();
  model.n_conservation_rows = n_nodes;
  for (int r = 0; r < n_nodes; ++r) model.lp.add_row(RowSense::Eq, 0.0);
  for (int k = 0; k < m; ++k)
    model.lp.add_row(RowSense::Ge, static_cast<double>(model.demand_sorted[static_cast<std::size_t>(k)]));

  // one column per arc: +1 leaving the tail, -1 entering the head, +1 in the
  // demand row of its item
  for (const Arc& a : g.arcs) {
    int tr = ix.at(node_index_key(a.tail));
    int hr = ix.at(node_index_key(a.head));
    SparseColumn col;
    std::vector<ColumnEntry> entries;
    entries.push_back({tr, 1.0});
    entries.push_back({hr, -1.0});
    if (a.item >= 1) entries.push_back({n_nodes + a.item - 1, 1.0});
    std::sort(entries.begin(), entries.end(),
              [](const ColumnEntry& x, const ColumnEntry& y) { return x.row < y.row; });
    col.entries = std::move(entries);
    model.lp.add_column(col, 0.0);
  }

  // z: a feedback arc target -> source
  SparseColumn zcol;
  int sr = ix.at(node_index_key(g.source));
  int tr = ix.at(node_index_key(g.target));
  if (sr != tr) {
    std::vector<ColumnEntry> entries{{sr, -1.0}, {tr, 1.0}};
    std::sort(entries.begin(), entries.end(),
              [](const ColumnEntry& x, const ColumnEntry& y) { return x.row < y.row; });
    zcol.entries = std::move(entries);
  }
  model.z_col = model.lp.add_column(zcol, 1.0);
  return model;
}

namespace {

struct Incumbent {
  bool valid = false;
  std::int64_t objective = 0;
  std::vector<std::int64_t> flows;
};

// Greedy packing: repeatedly fill one bin scanning items in build order,
// taking a unit of every item with remaining demand that still fits.
std::vector<std::pair<std::vector<int>, std::int64_t>> greedy_patterns(
    const ArcFlowGraph& g, std::vector<std::int64_t> residual) {
  const int m = g.item_count();
  std::map<std::vector<int>, std::int64_t> bins;
  auto any_left = [&]() {
    for (std::int64_t r : residual)
      if (r > 0) return true;
    return false;
  };
  while (any_left()) {
    int space = g.capacity;
    std::vector<int> pattern;
    for (int k = 1; k <= m; ++k) {
      if (residual[static_cast<std::size_t>(k - 1)] <= 0) continue;
      int w = g.width_of(k);
      if (w > space) continue;
      pattern.push_back(k);
      space -= w;
      --residual[static_cast<std::size_t>(k - 1)];
    }
    ++bins[pattern];
  }
  return {bins.begin(), bins.end()};
}

// Routes (pattern, multiplicity) pairs into arc flows. Returns false if any
// pattern has no path, which would indicate a construction bug.
bool patterns_to_flows(const ArcFlowGraph& g,
                       const std::vector<std::pair<std::vector<int>, std::int64_t>>& patterns,
                       std::vector<std::int64_t>& flows, std::int64_t& bins) {
  flows.assign(g.arc_count(), 0);
  bins = 0;
  for (const auto& [pattern, mult] : patterns) {
    std::vector<std::size_t> path = route_pattern(g, pattern);
    if (path.empty() && !(g.source == g.target && pattern.empty())) return false;
    for (std::size_t arc : path) flows[arc] += mult;
    bins += mult;
  }
  return true;
}

Incumbent greedy_incumbent(const MilpModel& model) {
  Incumbent inc;
  auto patterns = greedy_patterns(model.graph, model.demand_sorted);
  std::int64_t bins = 0;
  if (!patterns_to_flows(model.graph, patterns, inc.flows, bins)) return inc;
  inc.objective = bins;
  inc.valid = true;
  return inc;
}

// Rounds the fractional root flow: repeatedly peel off a path with an
// integral bottleneck of at least one, then cover what is left greedily.
Incumbent rounding_incumbent(const MilpModel& model, const std::vector<double>& primal) {
  const ArcFlowGraph& g = model.graph;
  Incumbent inc;
  if (g.source == g.target) return inc;

  auto ix = index_nodes(g);
  std::vector<std::vector<std::size_t>> out(g.nodes.size());
  for (std::size_t k = 0; k < g.arcs.size(); ++k)
    out[static_cast<std::size_t>(ix.at(node_index_key(g.arcs[k].tail)))].push_back(k);
  const int source = ix.at(node_index_key(g.source));
  const int target = ix.at(node_index_key(g.target));

  std::vector<double> flow(g.arc_count());
  for (std::size_t k = 0; k < g.arc_count(); ++k) flow[k] = std::max(primal[k], 0.0);

  std::vector<std::int64_t> residual = model.demand_sorted;
  std::vector<std::int64_t> flows(g.arc_count(), 0);
  std::int64_t bins = 0;

  while (true) {
    // walk from the source along the highest-flow arcs
    std::vector<std::size_t> path;
    int v = source;
    double bottleneck = std::numeric_limits<double>::infinity();
    while (v != target) {
      std::size_t best_arc = 0;
      double best_flow = 1.0 - 1e-9;
      bool found = false;
      for (std::size_t k : out[static_cast<std::size_t>(v)]) {
        if (flow[k] > best_flow) {
          best_flow = flow[k];
          best_arc = k;
          found = true;
        }
      }
      if (!found) break;
      path.push_back(best_arc);
      bottleneck = std::min(bottleneck, flow[best_arc]);
      v = ix.at(node_index_key(g.arcs[best_arc].head));
    }
    if (v != target || path.empty()) break;
    auto mult = static_cast<std::int64_t>(std::floor(bottleneck + 1e-9));
    if (mult < 1) break;
    bool useful = false;
    for (std::size_t k : path) {
      flow[k] -= static_cast<double>(mult);
      int item = g.arcs[k].item;
      if (item >= 1 && residual[static_cast<std::size_t>(item - 1)] > 0) useful = true;
    }
    if (!useful) continue;  // flow reduced; pattern not worth a bin
    for (std::size_t k : path) {
      flows[k] += mult;
      int item = g.arcs[k].item;
      if (item >= 1)
        residual[static_cast<std::size_t>(item - 1)] =
            std::max<std::int64_t>(0, residual[static_cast<std::size_t>(item - 1)] - mult);
    }
    bins += mult;
  }

  bool left = false;
  for (std::int64_t r : residual)
    if (r > 0) left = true;
  if (left) {
    auto patterns = greedy_patterns(g, residual);
    std::vector<std::int64_t> extra;
    std::int64_t extra_bins = 0;
    if (!patterns_to_flows(g, patterns, extra, extra_bins)) return inc;
    for (std::size_t k = 0; k < flows.size(); ++k) flows[k] += extra[k];
    bins += extra_bins;
  }
  if (bins == 0) return inc;
  inc.valid = true;
  inc.objective = bins;
  inc.flows = std::move(flows);
  return inc;
}

// Verifies an integral candidate exactly: conservation, demand coverage and
// the objective value.
bool verify_integral(const MilpModel& model, const std::vector<std::int64_t>& flows,
                     std::int64_t z) {
  const ArcFlowGraph& g = model.graph;
  auto ix = index_nodes(g);
  std::vector<std::int64_t> net(g.nodes.size(), 0);
  std::vector<std::int64_t> covered(model.demand_sorted.size(), 0);
  for (std::size_t k = 0; k < g.arc_count(); ++k) {
    if (flows[k] < 0) return false;
    const Arc& a = g.arcs[k];
    net[static_cast<std::size_t>(ix.at(node_index_key(a.tail)))] += flows[k];
    net[static_cast<std::size_t>(ix.at(node_index_key(a.head)))] -= flows[k];
    if (a.item >= 1) covered[static_cast<std::size_t>(a.item - 1)] += flows[k];
  }
  const int source = ix.at(node_index_key(g.source));
  const int target = ix.at(node_index_key(g.target));
  if (source != target) {
    net[static_cast<std::size_t>(source)] -= z;
    net[static_cast<std::size_t>(target)] += z;
  }
  for (std::int64_t v : net)
    if (v != 0) return false;
  for (std::size_t k = 0; k < covered.size(); ++k)
    if (covered[k] < model.demand_sorted[k]) return false;
  return true;
}

struct BabNode {
  double bound = 0.0;
  int depth = 0;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<double> primal;
};

struct NodeOrder {
  bool operator()(const BabNode& a, const BabNode& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;  // min-bound first
    return a.depth < b.depth;                          // deeper first on ties
  }
};

int most_fractional(const std::vector<double>& x) {
  int best = -1;
  double best_dist = kIntTol;
  for (std::size_t j = 0; j < x.size(); ++j) {
    double frac = x[j] - std::floor(x[j]);
    double dist = std::min(frac, 1.0 - frac);
    if (dist > best_dist) {
      best_dist = dist;
      best = static_cast<int>(j);
    }
  }
  return best;
}

}  // namespace

MilpSolution solve(const MilpModel& model, const SolveLimits& limits) {
  using Clock = std::chrono::steady_clock;
  const auto t0 = Clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - t0).count(); };

  MilpSolution sol;
  const int n_cols = model.lp.n_cols();

  LinearProgram lp = model.lp;  // working copy; bounds mutated per node
  LpSolution root = solve_lp(lp);
  sol.nodes_explored = 1;
  if (root.status == LpStatus::Infeasible) {
    sol.status = MilpStatus::Infeasible;
    return sol;
  }
  if (root.status != LpStatus::Optimal) throw Error("root relaxation did not solve to optimality");
  sol.lp_bound = root.objective;

  Incumbent best = greedy_incumbent(model);
  if (!best.valid) throw Error("greedy start found no routable pattern");
  Incumbent rounded = rounding_incumbent(model, root.primal);
  if (rounded.valid && rounded.objective < best.objective) best = rounded;
  if (!verify_integral(model, best.flows, best.objective))
    throw Error("initial incumbent failed verification");

  auto lower_bound_of = [](double lp_obj) {
    return static_cast<std::int64_t>(std::ceil(lp_obj - kIntTol));
  };

  std::priority_queue<BabNode, std::vector<BabNode>, NodeOrder> open;
  {
    BabNode r;
    r.bound = root.objective;
    r.depth = 0;
    r.lower.assign(static_cast<std::size_t>(n_cols), 0.0);
    r.upper.assign(static_cast<std::size_t>(n_cols), LinearProgram::kInfinity);
    r.primal = root.primal;
    open.push(std::move(r));
  }

  bool limit_hit = false;
  while (!open.empty()) {
    if (elapsed() > limits.time_limit_sec || sol.nodes_explored >= limits.node_limit) {
      limit_hit = true;
      break;
    }
    BabNode node = open.top();
    open.pop();
    if (lower_bound_of(node.bound) >= best.objective) break;  // best-bound: all pruned

    int branch_col = most_fractional(node.primal);
    if (branch_col < 0) {
      // integral: round, verify, accept
      std::vector<std::int64_t> flows(static_cast<std::size_t>(n_cols) - 1);
      for (std::size_t j = 0; j + 1 < static_cast<std::size_t>(n_cols); ++j)
        flows[j] = std::llround(node.primal[j]);
      std::int64_t z = std::llround(node.primal[static_cast<std::size_t>(model.z_col)]);
      if (verify_integral(model, flows, z) && z < best.objective) {
        best.objective = z;
        best.flows = std::move(flows);
      }
      continue;
    }

    double v = node.primal[static_cast<std::size_t>(branch_col)];
    for (int side = 0; side < 2; ++side) {
      BabNode child;
      child.depth = node.depth + 1;
      child.lower = node.lower;
      child.upper = node.upper;
      if (side == 0)
        child.upper[static_cast<std::size_t>(branch_col)] = std::floor(v);
      else
        child.lower[static_cast<std::size_t>(branch_col)] = std::ceil(v);

      for (int j = 0; j < n_cols; ++j) {
        lp.set_lower(j, child.lower[static_cast<std::size_t>(j)]);
        lp.set_upper(j, child.upper[static_cast<std::size_t>(j)]);
      }
      LpSolution child_lp = solve_lp(lp);
      ++sol.nodes_explored;
      if (child_lp.status == LpStatus::Infeasible) continue;
      if (child_lp.status != LpStatus::Optimal)
        throw Error("node relaxation did not solve to optimality");
      if (lower_bound_of(child_lp.objective) >= best.objective) continue;
      child.bound = child_lp.objective;
      child.primal = std::move(child_lp.primal);
      open.push(std::move(child));
    }
  }

  sol.status = limit_hit ? MilpStatus::Limit : MilpStatus::Optimal;
  sol.objective = best.objective;
  sol.flows = std::move(best.flows);
  return sol;
}

std::vector<std::pair<std::vector<std::size_t>, std::int64_t>> decompose_paths(
    const ArcFlowGraph& g, const std::vector<std::int64_t>& flows, std::int64_t z) {
  if (flows.size() != g.arc_count()) throw Error("flow vector length does not match arc count");
  for (std::int64_t f : flows)
    if (f < 0) throw Error("non-conserving flow: negative arc flow");

  auto ix = index_nodes(g);
  // conservation check up-front
  {
    std::vector<std::int64_t> net(g.nodes.size(), 0);
    for (std::size_t k = 0; k < g.arc_count(); ++k) {
      net[static_cast<std::size_t>(ix.at(node_index_key(g.arcs[k].tail)))] += flows[k];
      net[static_cast<std::size_t>(ix.at(node_index_key(g.arcs[k].head)))] -= flows[k];
    }
    const int source = ix.at(node_index_key(g.source));
    const int target = ix.at(node_index_key(g.target));
    if (source != target) {
      net[static_cast<std::size_t>(source)] -= z;
      net[static_cast<std::size_t>(target)] += z;
    }
    for (std::int64_t v : net)
      if (v != 0) throw Error("non-conserving flow");
  }

  std::vector<std::vector<std::size_t>> out(g.nodes.size());
  for (std::size_t k = 0; k < g.arcs.size(); ++k)
    out[static_cast<std::size_t>(ix.at(node_index_key(g.arcs[k].tail)))].push_back(k);
  const int source = ix.at(node_index_key(g.source));
  const int target = ix.at(node_index_key(g.target));

  std::vector<std::int64_t> residual = flows;
  std::vector<std::pair<std::vector<std::size_t>, std::int64_t>> paths;
  std::int64_t extracted = 0;
  while (extracted < z) {
    std::vector<std::size_t> path;
    std::int64_t bottleneck = std::numeric_limits<std::int64_t>::max();
    int v = source;
    while (v != target) {
      bool found = false;
      for (std::size_t k : out[static_cast<std::size_t>(v)]) {
        if (residual[k] > 0) {
          path.push_back(k);
          bottleneck = std::min(bottleneck, residual[k]);
          v = ix.at(node_index_key(g.arcs[k].head));
          found = true;
          break;
        }
      }
      if (!found) throw Error("non-conserving flow: walk stuck before the target");
    }
    std::int64_t mult = std::min(bottleneck, z - extracted);
    for (std::size_t k : path) residual[k] -= mult;
    paths.emplace_back(std::move(path), mult);
    extracted += mult;
  }
  for (std::int64_t f : residual)
    if (f != 0) throw Error("non-conserving flow: positive flow left after z paths");
  return paths;
}

PatternSolution decompose_flow(const ArcFlowGraph& g, const std::vector<std::int64_t>& flows,
                               std::int64_t z) {
  const auto m_original = g.original_index.size();
  PatternSolution out;
  out.total_bins = z;
  std::map<std::vector<std::uint8_t>, std::int64_t> merged;
  for (const auto& [path, mult] : decompose_paths(g, flows, z)) {
    std::vector<std::uint8_t> pattern(m_original, 0);
    for (std::size_t k : path) {
      int item = g.arcs[k].item;
      if (item >= 1)
        pattern[static_cast<std::size_t>(g.original_index[static_cast<std::size_t>(item - 1)])] = 1;
    }
    merged[pattern] += mult;
  }
  out.patterns.assign(merged.begin(), merged.end());
  return out;
}

namespace {

std::string node_name(const NodeLabel& n) {
  std::ostringstream os;
  os << n.x << '_' << n.i;
  return os.str();
}

std::string arc_var_name(const Arc& a) {
  std::ostringstream os;
  os << "f_" << node_name(a.tail) << "__" << node_name(a.head) << "__" << a.item;
  return os.str();
}

}  // namespace

std::string export_lp_file(const MilpModel& model) {
  const ArcFlowGraph& g = model.graph;
  std::vector<std::string> var_names;
  var_names.reserve(g.arc_count() + 1);
  for (const Arc& a : g.arcs) var_names.push_back(arc_var_name(a));
  var_names.push_back("z");

  // rows -> terms, rebuilt from the column data
  const int n_rows = model.lp.n_rows();
  std::vector<std::vector<std::pair<int, double>>> row_terms(static_cast<std::size_t>(n_rows));
  for (int j = 0; j < model.lp.n_cols(); ++j)
    for (const ColumnEntry& e : model.lp.column(j).entries)
      row_terms[static_cast<std::size_t>(e.row)].emplace_back(j, e.value);

  std::ostringstream os;
  os << "Minimize\n obj: z\nSubject To\n";
  auto write_row = [&](const std::string& name, int r) {
    std::ostringstream line;
    line << ' ' << name << ':';
    bool first = true;
    for (auto [j, coef] : row_terms[static_cast<std::size_t>(r)]) {
      if (coef >= 0)
        line << (first ? " " : " + ");
      else
        line << " - ";
      double mag = std::abs(coef);
      if (mag != 1.0) line << mag << ' ';
      line << var_names[static_cast<std::size_t>(j)];
      first = false;
    }
    if (first) line << " 0 z";  // empty row; keep the file well-formed
    line << (model.lp.sense(r) == RowSense::Eq ? " = " : " >= ") << model.lp.rhs(r) << '\n';
    // wrap long expressions; LP readers accept arbitrary line breaks between tokens
    std::string text = line.str();
    std::size_t col = 0;
    for (std::size_t p = 0; p < text.size(); ++p, ++col) {
      if (col > 200 && text[p] == ' ') {
        os << '\n' << "   ";
        col = 0;
        continue;
      }
      os << text[p];
    }
  };
  for (int r = 0; r < model.n_conservation_rows; ++r)
    write_row("flow_" + node_name(g.nodes[static_cast<std::size_t>(r)]), r);
  for (int k = 1; k <= g.item_count(); ++k)
    write_row("dem_" + std::to_string(k), model.n_conservation_rows + k - 1);

  os << "Bounds\n z >= 0\n";
  os << "Generals\n";
  std::size_t col = 1;
  for (const std::string& name : var_names) {
    if (col + name.size() > 200) {
      os << "\n ";
      col = 1;
    }
    os << ' ' << name;
    col += name.size() + 1;
  }
  os << "\nEnd\n";
  return os.str();
}

}  // namespace arcflow
