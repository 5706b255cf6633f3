#include "arcflow/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "arcflow/error.hpp"

namespace arcflow {

int LinearProgram::add_row(RowSense sense, double rhs) {
  if (!std::isfinite(rhs)) throw Error("row right-hand side must be finite");
  senses_.push_back(sense);
  rhs_.push_back(rhs);
  return n_rows() - 1;
}

int LinearProgram::add_column(const SparseColumn& column, double cost) {
  return add_column(column, cost, 0.0, kInfinity);
}

int LinearProgram::add_column(const SparseColumn& column, double cost, double lower,
                              double upper) {
  int prev = std::numeric_limits<int>::min();
  for (const ColumnEntry& e : column.entries) {
    if (e.row < 0 || e.row >= n_rows() || e.row <= prev) throw Error("bad row index");
    if (!std::isfinite(e.value)) throw Error("column coefficient must be finite");
    prev = e.row;
  }
  if (!std::isfinite(cost)) throw Error("column cost must be finite");
  columns_.push_back(column);
  costs_.push_back(cost);
  lower_.push_back(lower);
  upper_.push_back(upper);
  return n_cols() - 1;
}

namespace {

// Dense working tableau for the two-phase method. Lower bounds are shifted
// out, finite upper bounds become appended >= rows, every >= row gets a
// surplus column, rows are sign-normalized to a nonnegative rhs, and rows
// without a reusable surplus get an artificial.
struct Tableau {
  int n_struct = 0;        // structural variables
  int n_total = 0;         // structural + surplus + artificial
  int first_artificial = 0;
  std::vector<double> a;    // rows x n_total, row-major
  std::vector<double> rhs;  // per row
  std::vector<int> basis;   // per row: basic column
  std::vector<int> init_col;   // per row: its initial identity column
  std::vector<int> orig_row;   // per row: original LP row, -1 for bound rows
  std::vector<double> row_sign;  // +1 / -1 applied to the original row
  std::vector<char> is_artificial;

  int rows() const { return static_cast<int>(rhs.size()); }
  double* row(int r) { return a.data() + static_cast<std::size_t>(r) * static_cast<std::size_t>(n_total); }
  const double* row(int r) const {
    return a.data() + static_cast<std::size_t>(r) * static_cast<std::size_t>(n_total);
  }

  void delete_row(int r);
};

void Tableau::delete_row(int r) {
  int last = rows() - 1;
  if (r != last) {
    std::memcpy(row(r), row(last), sizeof(double) * static_cast<std::size_t>(n_total));
    rhs[static_cast<std::size_t>(r)] = rhs[static_cast<std::size_t>(last)];
    basis[static_cast<std::size_t>(r)] = basis[static_cast<std::size_t>(last)];
    init_col[static_cast<std::size_t>(r)] = init_col[static_cast<std::size_t>(last)];
    orig_row[static_cast<std::size_t>(r)] = orig_row[static_cast<std::size_t>(last)];
    row_sign[static_cast<std::size_t>(r)] = row_sign[static_cast<std::size_t>(last)];
  }
  a.resize(a.size() - static_cast<std::size_t>(n_total));
  rhs.pop_back();
  basis.pop_back();
  init_col.pop_back();
  orig_row.pop_back();
  row_sign.pop_back();
}

struct WorkingRow {
  RowSense sense;
  double rhs;
  int orig_row;   // -1 for upper-bound rows
  int bound_col;  // structural column for bound rows, -1 otherwise
};

class Simplex {
 public:
  Simplex(const LinearProgram& lp, const SimplexOptions& opt) : lp_(lp), opt_(opt) {}

  LpSolution run();

 private:
  void build();
  bool iterate(int phase);          // one pivot; false when phase is optimal
  int price(int phase) const;       // entering column or -1
  int ratio_test(int col) const;    // leaving row or -1
  void pivot(int r, int jcol);
  double phase_objective(int phase) const;
  void cleanup_artificials();
  LpSolution extract();
  LpSolution failed(LpStatus status);

  const LinearProgram& lp_;
  SimplexOptions opt_;
  Tableau t_;
  std::vector<double> shifted_cost_;  // per structural column (original costs)
  std::vector<double> obj1_, obj2_;   // reduced cost rows for phase 1 / 2
  double const_term_ = 0.0;
  long iterations_ = 0;
  bool bland_ = false;
  long stall_ = 0;
  double last_value_ = std::numeric_limits<double>::infinity();
  int phase_ = 1;
  LpStatus early_status_ = LpStatus::Optimal;
  bool early_exit_ = false;
};

void Simplex::build() {
  const int n = lp_.n_cols();
  const int m0 = lp_.n_rows();

  // shift lower bounds: x = l + y, y >= 0
  std::vector<double> shifted_rhs(static_cast<std::size_t>(m0));
  for (int r = 0; r < m0; ++r) shifted_rhs[static_cast<std::size_t>(r)] = lp_.rhs(r);
  for (int j = 0; j < n; ++j) {
    double l = lp_.lower(j);
    if (l != 0.0) {
      const_term_ += lp_.cost(j) * l;
      for (const ColumnEntry& e : lp_.column(j).entries)
        shifted_rhs[static_cast<std::size_t>(e.row)] -= e.value * l;
    }
  }

  std::vector<WorkingRow> rows;
  rows.reserve(static_cast<std::size_t>(m0) + 8);
  for (int r = 0; r < m0; ++r)
    rows.push_back(WorkingRow{lp_.sense(r), shifted_rhs[static_cast<std::size_t>(r)], r, -1});
  for (int j = 0; j < n; ++j) {
    double u = lp_.upper(j);
    if (u == LinearProgram::kInfinity) continue;
    double range = u - lp_.lower(j);
    if (range < -opt_.pivot_tol) {
      early_exit_ = true;
      early_status_ = LpStatus::Infeasible;
      return;
    }
    range = std::max(range, 0.0);
    rows.push_back(WorkingRow{RowSense::Ge, -range, -1, j});  // -y_j >= -range
  }

  const int m = static_cast<int>(rows.size());
  int n_surplus = 0;
  for (const WorkingRow& wr : rows)
    if (wr.sense == RowSense::Ge) ++n_surplus;

  t_.n_struct = n;
  t_.first_artificial = n + n_surplus;
  t_.n_total = n + n_surplus + m;  // artificial slots allocated per row, some unused
  t_.a.assign(static_cast<std::size_t>(m) * static_cast<std::size_t>(t_.n_total), 0.0);
  t_.rhs.resize(static_cast<std::size_t>(m));
  t_.basis.assign(static_cast<std::size_t>(m), -1);
  t_.init_col.resize(static_cast<std::size_t>(m));
  t_.orig_row.resize(static_cast<std::size_t>(m));
  t_.row_sign.resize(static_cast<std::size_t>(m));
  t_.is_artificial.assign(static_cast<std::size_t>(t_.n_total), 0);

  for (int r = 0; r < m; ++r) {
    t_.row_sign[static_cast<std::size_t>(r)] = rows[static_cast<std::size_t>(r)].rhs < 0.0 ? -1.0 : 1.0;
    t_.rhs[static_cast<std::size_t>(r)] = std::abs(rows[static_cast<std::size_t>(r)].rhs);
    t_.orig_row[static_cast<std::size_t>(r)] = rows[static_cast<std::size_t>(r)].orig_row;
  }

  // structural coefficients
  for (int j = 0; j < n; ++j)
    for (const ColumnEntry& e : lp_.column(j).entries)
      t_.row(e.row)[j] = t_.row_sign[static_cast<std::size_t>(e.row)] * e.value;
  for (int r = m0; r < m; ++r)
    t_.row(r)[rows[static_cast<std::size_t>(r)].bound_col] =
        t_.row_sign[static_cast<std::size_t>(r)] * -1.0;

  // surplus and artificial columns; pick the initial basis
  int next_surplus = n;
  int next_artificial = t_.first_artificial;
  for (int r = 0; r < m; ++r) {
    double sign = t_.row_sign[static_cast<std::size_t>(r)];
    int identity = -1;
    if (rows[static_cast<std::size_t>(r)].sense == RowSense::Ge) {
      int s = next_surplus++;
      t_.row(r)[s] = sign * -1.0;
      if (sign < 0.0) identity = s;  // negated surplus has coefficient +1
    }
    if (identity < 0) {
      identity = next_artificial;
      t_.row(r)[identity] = 1.0;
      t_.is_artificial[static_cast<std::size_t>(identity)] = 1;
    }
    ++next_artificial;
    t_.basis[static_cast<std::size_t>(r)] = identity;
    t_.init_col[static_cast<std::size_t>(r)] = identity;
  }

  shifted_cost_.resize(static_cast<std::size_t>(t_.n_total), 0.0);
  for (int j = 0; j < n; ++j) shifted_cost_[static_cast<std::size_t>(j)] = lp_.cost(j);

  // reduced cost rows for the initial basis
  obj1_.assign(static_cast<std::size_t>(t_.n_total), 0.0);
  obj2_ = shifted_cost_;
  for (int j = 0; j < t_.n_total; ++j)
    if (t_.is_artificial[static_cast<std::size_t>(j)]) obj1_[static_cast<std::size_t>(j)] = 1.0;
  for (int r = 0; r < m; ++r) {
    int b = t_.basis[static_cast<std::size_t>(r)];
    if (!t_.is_artificial[static_cast<std::size_t>(b)]) continue;
    const double* row = t_.row(r);
    for (int j = 0; j < t_.n_total; ++j) obj1_[static_cast<std::size_t>(j)] -= row[j];
  }
}

double Simplex::phase_objective(int phase) const {
  double v = 0.0;
  for (int r = 0; r < t_.rows(); ++r) {
    int b = t_.basis[static_cast<std::size_t>(r)];
    double c = phase == 1 ? (t_.is_artificial[static_cast<std::size_t>(b)] ? 1.0 : 0.0)
                          : shifted_cost_[static_cast<std::size_t>(b)];
    if (c != 0.0) v += c * t_.rhs[static_cast<std::size_t>(r)];
  }
  return v;
}

int Simplex::price(int phase) const {
  const std::vector<double>& obj = phase == 1 ? obj1_ : obj2_;
  int best = -1;
  double best_rc = -opt_.opt_tol;
  for (int j = 0; j < t_.n_total; ++j) {
    if (t_.is_artificial[static_cast<std::size_t>(j)]) continue;  // never re-enters
    double rc = obj[static_cast<std::size_t>(j)];
    if (rc < best_rc) {
      if (bland_) return j;
      best_rc = rc;
      best = j;
    }
  }
  return best;
}

int Simplex::ratio_test(int col) const {
  int leave = -1;
  double best_theta = 0.0, best_pivot = 0.0;
  for (int r = 0; r < t_.rows(); ++r) {
    double piv = t_.row(r)[col];
    if (piv <= opt_.pivot_tol) continue;
    double theta = std::max(t_.rhs[static_cast<std::size_t>(r)], 0.0) / piv;
    if (leave < 0 || theta < best_theta - 1e-9) {
      leave = r;
      best_theta = theta;
      best_pivot = piv;
      continue;
    }
    if (theta > best_theta + 1e-9) continue;
    if (bland_) {
      if (t_.basis[static_cast<std::size_t>(r)] < t_.basis[static_cast<std::size_t>(leave)]) {
        leave = r;
        best_theta = std::min(best_theta, theta);
        best_pivot = piv;
      }
      continue;
    }
    // prefer kicking artificials out, then the larger pivot
    bool r_art = t_.is_artificial[static_cast<std::size_t>(t_.basis[static_cast<std::size_t>(r)])];
    bool l_art =
        t_.is_artificial[static_cast<std::size_t>(t_.basis[static_cast<std::size_t>(leave)])];
    if (r_art != l_art) {
      if (r_art) {
        leave = r;
        best_pivot = piv;
      }
      continue;
    }
    if (piv > best_pivot) {
      leave = r;
      best_pivot = piv;
    }
  }
  return leave;
}

void Simplex::pivot(int r, int jcol) {
  double* prow = t_.row(r);
  const double inv = 1.0 / prow[jcol];
  for (int j = 0; j < t_.n_total; ++j) prow[j] *= inv;
  prow[jcol] = 1.0;  // cut round-off
  t_.rhs[static_cast<std::size_t>(r)] *= inv;

  const int n_total = t_.n_total;
  for (int i = 0; i < t_.rows(); ++i) {
    if (i == r) continue;
    double* row = t_.row(i);
    double f = row[jcol];
    if (f == 0.0) continue;
    for (int j = 0; j < n_total; ++j) row[j] -= f * prow[j];
    row[jcol] = 0.0;
    t_.rhs[static_cast<std::size_t>(i)] -= f * t_.rhs[static_cast<std::size_t>(r)];
    if (t_.rhs[static_cast<std::size_t>(i)] < 0.0 &&
        t_.rhs[static_cast<std::size_t>(i)] > -1e-11)
      t_.rhs[static_cast<std::size_t>(i)] = 0.0;
  }
  for (std::vector<double>* obj : {&obj1_, &obj2_}) {
    double f = (*obj)[static_cast<std::size_t>(jcol)];
    if (f == 0.0) continue;
    for (int j = 0; j < n_total; ++j) (*obj)[static_cast<std::size_t>(j)] -= f * prow[j];
    (*obj)[static_cast<std::size_t>(jcol)] = 0.0;
  }
  t_.basis[static_cast<std::size_t>(r)] = jcol;
  ++iterations_;
}

bool Simplex::iterate(int phase) {
  int enter = price(phase);
  if (enter < 0) return false;
  int leave = ratio_test(enter);
  if (leave < 0) {
    early_exit_ = true;
    early_status_ = LpStatus::Unbounded;
    return false;
  }
  pivot(leave, enter);

  double v = phase_objective(phase);
  if (v < last_value_ - 1e-12) {
    stall_ = 0;
    last_value_ = v;
  } else if (!bland_ && ++stall_ > 5L * (t_.rows() + t_.n_total)) {
    bland_ = true;  // anti-cycling fallback
  }
  return true;
}

void Simplex::cleanup_artificials() {
  // pivot basic artificials out; a row with no usable pivot is redundant
  for (int r = t_.rows() - 1; r >= 0; --r) {
    int b = t_.basis[static_cast<std::size_t>(r)];
    if (!t_.is_artificial[static_cast<std::size_t>(b)]) continue;
    const double* row = t_.row(r);
    int pivot_col = -1;
    double best = opt_.pivot_tol;
    for (int j = 0; j < t_.first_artificial; ++j) {
      if (std::abs(row[j]) > best) {
        best = std::abs(row[j]);
        pivot_col = j;
      }
    }
    if (pivot_col >= 0)
      pivot(r, pivot_col);
    else
      t_.delete_row(r);
  }
}

LpSolution Simplex::failed(LpStatus status) {
  LpSolution s;
  s.status = status;
  s.iterations = iterations_;
  s.objective = std::numeric_limits<double>::quiet_NaN();
  return s;
}

LpSolution Simplex::extract() {
  LpSolution s;
  s.status = LpStatus::Optimal;
  s.iterations = iterations_;
  s.primal.assign(static_cast<std::size_t>(lp_.n_cols()), 0.0);
  for (int r = 0; r < t_.rows(); ++r) {
    int b = t_.basis[static_cast<std::size_t>(r)];
    if (b < t_.n_struct)
      s.primal[static_cast<std::size_t>(b)] = t_.rhs[static_cast<std::size_t>(r)];
  }
  for (int j = 0; j < lp_.n_cols(); ++j) s.primal[static_cast<std::size_t>(j)] += lp_.lower(j);
  s.objective = 0.0;
  for (int j = 0; j < lp_.n_cols(); ++j)
    s.objective += lp_.cost(j) * s.primal[static_cast<std::size_t>(j)];

  // duals via the initial identity columns: y = c_B B^-1
  s.duals.assign(static_cast<std::size_t>(lp_.n_rows()), 0.0);
  for (int r = 0; r < t_.rows(); ++r) {
    int orig = t_.orig_row[static_cast<std::size_t>(r)];
    if (orig < 0) continue;
    int idc = t_.init_col[static_cast<std::size_t>(r)];
    double y = 0.0;
    for (int i = 0; i < t_.rows(); ++i) {
      double c = shifted_cost_[static_cast<std::size_t>(t_.basis[static_cast<std::size_t>(i)])];
      if (c != 0.0) y += c * t_.row(i)[idc];
    }
    s.duals[static_cast<std::size_t>(orig)] = t_.row_sign[static_cast<std::size_t>(r)] * y;
  }
  return s;
}

LpSolution Simplex::run() {
  build();
  if (early_exit_) return failed(early_status_);
  if (t_.rows() == 0) {
    // only bounds: every variable sits at its lower bound
    LpSolution s;
    s.status = LpStatus::Optimal;
    s.primal.assign(static_cast<std::size_t>(lp_.n_cols()), 0.0);
    s.objective = 0.0;
    for (int j = 0; j < lp_.n_cols(); ++j) {
      if (lp_.cost(j) < 0.0 && lp_.upper(j) == LinearProgram::kInfinity) return failed(LpStatus::Unbounded);
      double x = lp_.cost(j) < 0.0 ? lp_.upper(j) : lp_.lower(j);
      s.primal[static_cast<std::size_t>(j)] = x;
      s.objective += lp_.cost(j) * x;
    }
    return s;
  }

  bland_ = opt_.bland;
  for (phase_ = 1; phase_ <= 2; ++phase_) {
    stall_ = 0;
    last_value_ = std::numeric_limits<double>::infinity();
    while (true) {
      if (iterations_ >= opt_.max_iterations) return failed(LpStatus::IterationLimit);
      if (!iterate(phase_)) break;
    }
    if (early_exit_) return failed(early_status_);
    if (phase_ == 1) {
      if (phase_objective(1) > opt_.feas_tol) return failed(LpStatus::Infeasible);
      cleanup_artificials();
    }
  }
  return extract();
}

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, const SimplexOptions& options) {
  if (lp.n_cols() == 0) {
    // feasibility of the empty assignment
    LpSolution s;
    s.duals.assign(static_cast<std::size_t>(lp.n_rows()), 0.0);
    for (int r = 0; r < lp.n_rows(); ++r) {
      bool ok = lp.sense(r) == RowSense::Eq ? std::abs(lp.rhs(r)) <= options.feas_tol
                                            : lp.rhs(r) <= options.feas_tol;
      if (!ok) {
        s.status = LpStatus::Infeasible;
        s.objective = std::numeric_limits<double>::quiet_NaN();
        return s;
      }
    }
    s.status = LpStatus::Optimal;
    s.objective = 0.0;
    return s;
  }
  Simplex simplex(lp, options);
  return simplex.run();
}

LpSolution solve_lp(const LinearProgram& lp, long max_iterations) {
  SimplexOptions opt;
  opt.max_iterations = max_iterations;
  return solve_lp(lp, opt);
}

}  // namespace arcflow
