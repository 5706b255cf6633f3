#include "arcflow/colgen.hpp"

#include <set>

#include "arcflow/error.hpp"
#include "arcflow/knapsack.hpp"
#include "arcflow/lp.hpp"

namespace arcflow {

namespace {

SparseColumn pattern_column(const std::vector<std::uint8_t>& pattern) {
  SparseColumn col;
  for (std::size_t k = 0; k < pattern.size(); ++k)
    if (pattern[k]) col.entries.push_back({static_cast<int>(k), 1.0});
  return col;
}

}  // namespace

ColgenResult solve_root(const Instance& inst, double tol, int max_iterations) {
  if (tol <= 0) throw Error("colgen tolerance must be positive");
  const int m = inst.size();
  if (max_iterations < 0) max_iterations = 10 * m + 1000;
  const std::vector<int> widths = inst.widths();

  ColgenResult result;
  if (m == 0) return result;

  LinearProgram master;
  for (const Item& it : inst.items())
    master.add_row(RowSense::Ge, static_cast<double>(it.demand));

  std::set<std::vector<std::uint8_t>> known;
  auto add_pattern = [&](const std::vector<std::uint8_t>& pattern) {
    master.add_column(pattern_column(pattern), 1.0);
    known.insert(pattern);
    result.pool.columns.push_back(pattern);
  };
  for (int k = 0; k < m; ++k) {
    std::vector<std::uint8_t> singleton(static_cast<std::size_t>(m), 0);
    singleton[static_cast<std::size_t>(k)] = 1;
    add_pattern(singleton);
  }

  bool retried_with_bland = false;
  SimplexOptions options;
  while (true) {
    if (result.iterations >= max_iterations)
      throw Error("column generation exceeded its iteration cap");
    LpSolution sol = solve_lp(master, options);
    if (sol.status != LpStatus::Optimal)
      throw Error("master relaxation did not solve to optimality");
    ++result.iterations;
    result.objective_history.push_back(sol.objective);
    result.z_lp = sol.objective;
    result.duals = sol.duals;

    auto [profit, pattern] = knapsack_pattern(widths, sol.duals, inst.capacity());
    if (1.0 - profit >= -tol) break;  // no improving pattern
    if (known.count(pattern)) {
      // degenerate master: re-solve once under Bland's rule and re-price
      if (!retried_with_bland) {
        retried_with_bland = true;
        options.bland = true;
        continue;
      }
      result.degenerate = true;
      break;
    }
    retried_with_bland = false;
    options.bland = false;
    add_pattern(pattern);
  }
  result.n_columns = static_cast<int>(result.pool.columns.size());
  return result;
}

}  // namespace arcflow
