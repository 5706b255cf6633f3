#pragma once

#include <cstdint>
#include <limits>
#include <vector>

namespace arcflow {

enum class RowSense : std::uint8_t { Ge, Eq };

struct ColumnEntry {
  int row = 0;
  double value = 0.0;
};

/// Sparse column; row indices strictly increasing.
struct SparseColumn {
  std::vector<ColumnEntry> entries;
};

/// Minimization LP over nonnegative variables with >= / = rows. Variables
/// carry a lower bound (0 unless changed) and an optional upper bound;
/// branch-and-bound tightens these between solves.
class LinearProgram {
 public:
  static constexpr double kInfinity = std::numeric_limits<double>::infinity();

  int add_row(RowSense sense, double rhs);

  /// Appends a variable. Validates finiteness and strictly increasing row
  /// indices; throws Error("bad row index") otherwise. A solution of the
  /// smaller LP stays primal-feasible when padded with zero.
  int add_column(const SparseColumn& column, double cost);
  int add_column(const SparseColumn& column, double cost, double lower, double upper);

  void set_lower(int col, double lb) { lower_[static_cast<std::size_t>(col)] = lb; }
  void set_upper(int col, double ub) { upper_[static_cast<std::size_t>(col)] = ub; }

  int n_rows() const { return static_cast<int>(rhs_.size()); }
  int n_cols() const { return static_cast<int>(columns_.size()); }
  const SparseColumn& column(int j) const { return columns_[static_cast<std::size_t>(j)]; }
  double cost(int j) const { return costs_[static_cast<std::size_t>(j)]; }
  double lower(int j) const { return lower_[static_cast<std::size_t>(j)]; }
  double upper(int j) const { return upper_[static_cast<std::size_t>(j)]; }
  RowSense sense(int r) const { return senses_[static_cast<std::size_t>(r)]; }
  double rhs(int r) const { return rhs_[static_cast<std::size_t>(r)]; }

 private:
  std::vector<SparseColumn> columns_;
  std::vector<double> costs_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<RowSense> senses_;
  std::vector<double> rhs_;
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

/// At Optimal: primal is feasible within 1e-7, duals price every column to a
/// reduced cost >= -1e-7, and the primal and dual objectives agree.
struct LpSolution {
  LpStatus status = LpStatus::IterationLimit;
  double objective = 0.0;
  std::vector<double> primal;
  std::vector<double> duals;
  long iterations = 0;
};

struct SimplexOptions {
  long max_iterations = 500000;
  bool bland = false;  // start with Bland's rule instead of Dantzig pricing
  double feas_tol = 1e-7;
  double opt_tol = 1e-7;
  double pivot_tol = 1e-9;
};

/// Two-phase primal simplex on a dense tableau. Dantzig pricing with an
/// automatic switch to Bland's rule after 5 (rows + cols) iterations without
/// objective improvement.
LpSolution solve_lp(const LinearProgram& lp, const SimplexOptions& options = {});
LpSolution solve_lp(const LinearProgram& lp, long max_iterations);

}  // namespace arcflow
