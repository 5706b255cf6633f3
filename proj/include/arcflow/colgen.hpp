#pragma once

#include <cstdint>
#include <vector>

#include "arcflow/instance.hpp"

namespace arcflow {

/// Generated cutting patterns (binary vectors over instance item positions,
/// unit cost each). Exact duplicates are rejected.
struct ColumnPool {
  std::vector<std::vector<std::uint8_t>> columns;
};

struct ColgenResult {
  double z_lp = 0.0;
  int n_columns = 0;   // columns in the final master (singletons + generated)
  int iterations = 0;  // pricing rounds
  std::vector<double> duals;
  ColumnPool pool;
  bool degenerate = false;  // pricing repeated an existing column
  std::vector<double> objective_history;  // master objective per iteration
};

/// Gilmore-Gomory root bound: start from the m singleton patterns, solve the
/// restricted master, price with a 0-1 knapsack over the duals, add the
/// priced column while its reduced cost 1 - profit is below -tol. Throws
/// Error when the iteration cap (default 10 m + 1000) is exceeded.
ColgenResult solve_root(const Instance& inst, double tol = 1e-7, int max_iterations = -1);

}  // namespace arcflow
