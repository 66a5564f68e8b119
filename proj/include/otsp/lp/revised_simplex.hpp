#pragma once

#include <cstdint>
#include <vector>

#include "otsp/lp/kernels.hpp"

namespace otsp::lp {

enum class RowSense { Equal, AtLeast };

struct SimplexOptions {
  Exec exec = Exec::Serial;
  double feas_tol = 1e-9;
  double opt_tol = 1e-9;
  double pivot_tol = 1e-9;
  int refactor_every = 1000;
  std::int64_t max_iterations = 2'000'000;
};

// Floating-point revised simplex over  min c^T x, rows a^T x (= | >=) b, x >= 0.
// Every row r owns one auxiliary column (index num_structural() + r): an artificial
// (+1) for equality rows, a surplus (-1) for >= rows. Rows may be appended after a
// solve; the next solve() warm-starts with dual simplex.
class RevisedSimplex {
 public:
  enum class Status { Optimal, Infeasible, IterationLimit };

  RevisedSimplex(std::vector<double> costs, SimplexOptions opts = {});

  int num_structural() const { return nstruct_; }
  int num_rows() const { return m_; }
  int add_row(const SparseColumn& terms, RowSense sense, double rhs);

  Status solve();

  double objective() const;
  std::vector<double> primal() const;     // structural values
  std::vector<double> row_duals() const;  // pi with c_B = pi^T B
  const std::vector<int>& basis() const { return basis_; }
  bool is_basic(int col) const { return where_[static_cast<std::size_t>(col)] >= 0; }
  double basic_value(int row) const { return xb_[static_cast<std::size_t>(row)]; }
  RowSense sense(int r) const { return sense_[static_cast<std::size_t>(r)]; }

  // Recompute B^{-1}, x_B and reduced costs from scratch.
  void refactor();
  // Tighter tolerances and more frequent refactoring, for a retry after a failed exact check.
  void tighten();

  std::int64_t iterations() const { return iterations_; }
  std::int64_t refactorizations() const { return refactors_; }
  const SimplexOptions& options() const { return opt_; }

 private:
  bool is_aux(int j) const { return j >= nstruct_; }
  int aux_row(int j) const { return j - nstruct_; }
  double aux_coef(int r) const { return sense_[r] == RowSense::Equal ? 1.0 : -1.0; }
  bool barred(int j) const { return phase_ == 2 && is_aux(j) && sense_[aux_row(j)] == RowSense::Equal; }
  double cost(int j) const;
  SparseColumn column(int j) const;

  void compute_xb();
  void compute_row_norms();
  void compute_reduced_costs();
  // `row_cols`/`row_vals` may carry an already computed pivot row.
  void pivot(int r, int q, const std::vector<double>& alpha, std::vector<int>* row_cols = nullptr,
             std::vector<double>* row_vals = nullptr);
  void row_alpha(int r, std::vector<int>& cols, std::vector<double>& vals);

  bool primal_loop();  // false on iteration limit
  int dual_loop();     // 0 ok, 1 infeasible, 2 iteration limit
  void drive_out_artificials();

  SimplexOptions opt_;
  int nstruct_;
  int m_ = 0;
  std::vector<double> c_;
  std::vector<SparseColumn> cols_;  // structural columns
  std::vector<SparseColumn> rows_;
  std::vector<RowSense> sense_;
  std::vector<double> b_;

  std::vector<double> binv_;  // m x m row-major
  std::vector<int> basis_;    // per row: column
  std::vector<int> where_;    // per column: row or -1
  std::vector<double> xb_;
  std::vector<double> d_;  // reduced costs per column (0 for basic)
  std::vector<double> dse_;  // ||row r of B^{-1}||^2, dual steepest-edge weights
  int phase_ = 0;          // 0 = not started, 1, 2
  int since_refactor_ = 0;
  std::int64_t iterations_ = 0, refactors_ = 0;
};

}  // namespace otsp::lp
