#include "otsp/lp/revised_simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "otsp/error.hpp"

namespace otsp::lp {

namespace {
constexpr int kDegenerateStreak = 50;
}

RevisedSimplex::RevisedSimplex(std::vector<double> costs, SimplexOptions opts)
    : opt_(opts), nstruct_(static_cast<int>(costs.size())), c_(std::move(costs)), cols_(c_.size()) {
  where_.assign(c_.size(), -1);
  d_.assign(c_.size(), 0.0);
}

double RevisedSimplex::cost(int j) const {
  if (phase_ == 1) return is_aux(j) && sense_[aux_row(j)] == RowSense::Equal ? 1.0 : 0.0;
  return is_aux(j) ? 0.0 : c_[j];
}

SparseColumn RevisedSimplex::column(int j) const {
  if (is_aux(j)) return {{aux_row(j), aux_coef(aux_row(j))}};
  return cols_[j];
}

int RevisedSimplex::add_row(const SparseColumn& terms_in, RowSense sense, double rhs) {
  SparseColumn terms = terms_in;
  if (phase_ != 0 && sense == RowSense::Equal)
    throw std::logic_error("equality rows must be added before the first solve");
  if (sense == RowSense::Equal && rhs < 0) {
    for (auto& t : terms) t.second = -t.second;
    rhs = -rhs;
  }
  const int r = m_;
  for (const auto& [j, c] : terms) cols_[j].push_back({r, c});
  rows_.push_back(terms);
  sense_.push_back(sense);
  b_.push_back(rhs);
  where_.push_back(-1);
  d_.push_back(0.0);
  ++m_;
  if (phase_ == 0) return r;

  // Grow B^{-1}: the new surplus is basic in the new row.
  const int m0 = r;
  std::vector<double> w(static_cast<std::size_t>(m0), 0.0);
  double act = 0.0;
  for (const auto& [j, c] : terms) {
    int row = where_[j];
    if (row < 0) continue;
    act += c * xb_[row];
    const double* src = binv_.data() + static_cast<std::ptrdiff_t>(row) * m0;
    for (int k = 0; k < m0; ++k) w[k] += c * src[k];
  }
  std::vector<double> nb(static_cast<std::size_t>(m_) * m_, 0.0);
  for (int i = 0; i < m0; ++i)
    std::copy(binv_.begin() + static_cast<std::ptrdiff_t>(i) * m0,
              binv_.begin() + static_cast<std::ptrdiff_t>(i + 1) * m0,
              nb.begin() + static_cast<std::ptrdiff_t>(i) * m_);
  for (int k = 0; k < m0; ++k) nb[static_cast<std::size_t>(m0) * m_ + k] = w[k];
  nb[static_cast<std::size_t>(m0) * m_ + m0] = -1.0;
  binv_ = std::move(nb);
  double nw = 1.0;
  for (double v : w) nw += v * v;
  dse_.push_back(nw);
  basis_.push_back(nstruct_ + r);
  where_[nstruct_ + r] = r;
  xb_.push_back(act - rhs);
  return r;
}

void RevisedSimplex::compute_xb() {
  xb_.assign(static_cast<std::size_t>(m_), 0.0);
  for (int i = 0; i < m_; ++i) {
    const double* row = binv_.data() + static_cast<std::ptrdiff_t>(i) * m_;
    double s = 0.0;
    for (int k = 0; k < m_; ++k) s += row[k] * b_[k];
    xb_[i] = s;
  }
}

void RevisedSimplex::compute_row_norms() {
  dse_.assign(static_cast<std::size_t>(m_), 0.0);
  for (int i = 0; i < m_; ++i) {
    const double* row = binv_.data() + static_cast<std::ptrdiff_t>(i) * m_;
    double s = 0.0;
    for (int k = 0; k < m_; ++k) s += row[k] * row[k];
    dse_[i] = s;
  }
}

void RevisedSimplex::compute_reduced_costs() {
  std::vector<double> pi(static_cast<std::size_t>(m_), 0.0);
  for (int i = 0; i < m_; ++i) {
    double cb = cost(basis_[i]);
    if (cb == 0.0) continue;
    const double* row = binv_.data() + static_cast<std::ptrdiff_t>(i) * m_;
    for (int k = 0; k < m_; ++k) pi[k] += cb * row[k];
  }
  const int total = nstruct_ + m_;
  d_.assign(static_cast<std::size_t>(total), 0.0);
  for (int j = 0; j < total; ++j) {
    if (where_[j] >= 0) continue;
    double s = cost(j);
    if (is_aux(j))
      s -= pi[aux_row(j)] * aux_coef(aux_row(j));
    else
      for (const auto& [r, c] : cols_[j]) s -= pi[r] * c;
    d_[j] = s;
  }
}

std::vector<double> RevisedSimplex::row_duals() const {
  std::vector<double> pi(static_cast<std::size_t>(m_), 0.0);
  for (int i = 0; i < m_; ++i) {
    int j = basis_[i];
    double cb = is_aux(j) ? 0.0 : c_[j];
    if (cb == 0.0) continue;
    const double* row = binv_.data() + static_cast<std::ptrdiff_t>(i) * m_;
    for (int k = 0; k < m_; ++k) pi[k] += cb * row[k];
  }
  return pi;
}

void RevisedSimplex::refactor() {
  const int m = m_;
  // Gauss-Jordan on [B | I] with partial pivoting.
  std::vector<double> a(static_cast<std::size_t>(m) * m, 0.0), inv(static_cast<std::size_t>(m) * m, 0.0);
  for (int i = 0; i < m; ++i) {
    for (const auto& [r, c] : column(basis_[i])) a[static_cast<std::size_t>(r) * m + i] = c;
    inv[static_cast<std::size_t>(i) * m + i] = 1.0;
  }
  for (int col = 0; col < m; ++col) {
    int piv = col;
    double best = std::fabs(a[static_cast<std::size_t>(col) * m + col]);
    for (int r = col + 1; r < m; ++r) {
      double v = std::fabs(a[static_cast<std::size_t>(r) * m + col]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best < 1e-12) throw ConsistencyError("simplex basis became singular during refactorization");
    if (piv != col)
      for (int k = 0; k < m; ++k) {
        std::swap(a[static_cast<std::size_t>(piv) * m + k], a[static_cast<std::size_t>(col) * m + k]);
        std::swap(inv[static_cast<std::size_t>(piv) * m + k], inv[static_cast<std::size_t>(col) * m + k]);
      }
    const double p = a[static_cast<std::size_t>(col) * m + col];
    for (int k = 0; k < m; ++k) {
      a[static_cast<std::size_t>(col) * m + k] /= p;
      inv[static_cast<std::size_t>(col) * m + k] /= p;
    }
    for (int r = 0; r < m; ++r) {
      if (r == col) continue;
      double f = a[static_cast<std::size_t>(r) * m + col];
      if (f == 0.0) continue;
      double* ar = a.data() + static_cast<std::ptrdiff_t>(r) * m;
      double* ir = inv.data() + static_cast<std::ptrdiff_t>(r) * m;
      const double* ac = a.data() + static_cast<std::ptrdiff_t>(col) * m;
      const double* ic = inv.data() + static_cast<std::ptrdiff_t>(col) * m;
      for (int k = 0; k < m; ++k) {
        ar[k] -= f * ac[k];
        ir[k] -= f * ic[k];
      }
    }
  }
  // a is now I; inv holds B^{-1} with rows indexed like B's columns (basis positions).
  binv_ = std::move(inv);
  compute_row_norms();
  compute_xb();
  compute_reduced_costs();
  since_refactor_ = 0;
  ++refactors_;
}

void RevisedSimplex::tighten() {
  opt_.pivot_tol = std::max(opt_.pivot_tol, 1e-7);
  opt_.feas_tol = std::min(opt_.feas_tol, 1e-11);
  opt_.opt_tol = std::min(opt_.opt_tol, 1e-11);
  opt_.refactor_every = std::max(10, opt_.refactor_every / 4);
  refactor();
}

void RevisedSimplex::row_alpha(int r, std::vector<int>& cols, std::vector<double>& vals) {
  std::vector<double> rho(binv_.begin() + static_cast<std::ptrdiff_t>(r) * m_,
                          binv_.begin() + static_cast<std::ptrdiff_t>(r + 1) * m_);
  cols.clear();
  for (int j = 0; j < nstruct_; ++j)
    if (where_[j] < 0 && !cols_[j].empty()) cols.push_back(j);
  kernels::pivot_row(rho, cols_, cols, vals, opt_.exec);
  for (int i = 0; i < m_; ++i) {
    int j = nstruct_ + i;
    if (where_[j] >= 0 || barred(j)) continue;
    cols.push_back(j);
    vals.push_back(rho[i] * aux_coef(i));
  }
}

void RevisedSimplex::pivot(int r, int q, const std::vector<double>& alpha, std::vector<int>* row_cols,
                           std::vector<double>* row_vals) {
  const double theta = xb_[r] / alpha[r];
  for (int i = 0; i < m_; ++i) xb_[i] -= theta * alpha[i];
  xb_[r] = theta;
  // reduced costs along the pivot row (taken before B^{-1} changes)
  std::vector<int> own_cols;
  std::vector<double> own_vals;
  if (!row_cols) {
    row_alpha(r, own_cols, own_vals);
    row_cols = &own_cols;
    row_vals = &own_vals;
  }
  const double f = d_[q] / alpha[r];
  for (std::size_t c = 0; c < row_cols->size(); ++c) d_[(*row_cols)[c]] -= f * (*row_vals)[c];
  d_[basis_[r]] = -f;
  d_[q] = 0.0;
  kernels::eta_update(binv_, m_, r, alpha, opt_.exec, &dse_);
  where_[basis_[r]] = -1;
  basis_[r] = q;
  where_[q] = r;
  ++iterations_;
  if (++since_refactor_ >= opt_.refactor_every) refactor();
}

bool RevisedSimplex::primal_loop() {
  int degenerate = 0;
  std::vector<double> alpha;
  for (;;) {
    if (iterations_ >= opt_.max_iterations) return false;
    const bool bland = degenerate > kDegenerateStreak;
    int q = -1;
    double best = -opt_.opt_tol;
    const int total = nstruct_ + m_;
    for (int j = 0; j < total; ++j) {
      if (where_[j] >= 0 || barred(j) || (!is_aux(j) && cols_[j].empty())) continue;
      if (d_[j] < best) {
        q = j;
        if (bland) break;
        best = d_[j];
      }
    }
    if (q < 0) return true;
    kernels::ftran(binv_, m_, column(q), alpha, opt_.exec);
    int r = -1;
    double tmin = std::numeric_limits<double>::infinity(), amax = 0.0;
    for (int i = 0; i < m_; ++i) {
      if (alpha[i] <= opt_.pivot_tol) continue;
      if (phase_ == 2 && is_aux(basis_[i]) && sense_[aux_row(basis_[i])] == RowSense::Equal) continue;
      double t = std::max(xb_[i], 0.0) / alpha[i];
      bool take;
      if (r < 0 || t < tmin - 1e-12)
        take = true;
      else if (t <= tmin + 1e-12)
        take = bland ? basis_[i] < basis_[r] : alpha[i] > amax;
      else
        take = false;
      if (take) {
        r = i;
        tmin = std::min(t, tmin);
        amax = alpha[i];
      }
    }
    if (r < 0) {
      // Direction of unboundedness. Cannot happen with nonnegative costs; refresh once.
      refactor();
      if (d_[q] < -opt_.opt_tol) throw ConsistencyError("LP is unbounded");
      continue;
    }
    if (xb_[r] < 0) xb_[r] = 0;  // keep the ratio test honest after tiny drift
    degenerate = tmin <= 1e-12 ? degenerate + 1 : 0;
    pivot(r, q, alpha);
  }
}

int RevisedSimplex::dual_loop() {
  int degenerate = 0;
  std::vector<int> cols;
  std::vector<double> vals, alpha;
  for (;;) {
    if (iterations_ >= opt_.max_iterations) return 2;
    const bool bland = degenerate > kDegenerateStreak;
    int r = -1;
    double score = 0.0;
    for (int i = 0; i < m_; ++i) {
      if (xb_[i] >= -opt_.feas_tol) continue;
      if (bland) {
        if (r < 0 || basis_[i] < basis_[r]) r = i;
      } else {
        double sc = xb_[i] * xb_[i] / std::max(dse_[i], 1e-12);
        if (sc > score) {
          score = sc;
          r = i;
        }
      }
    }
    if (r < 0) return 0;
    row_alpha(r, cols, vals);
    int q = -1;
    double best = std::numeric_limits<double>::infinity(), amag = 0.0;
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (vals[c] >= -opt_.pivot_tol) continue;
      int j = cols[c];
      double ratio = std::max(d_[j], 0.0) / -vals[c];
      bool take;
      if (q < 0 || ratio < best - 1e-12)
        take = true;
      else if (ratio <= best + 1e-12)
        take = bland ? j < q : -vals[c] > amag;
      else
        take = false;
      if (take) {
        q = j;
        best = std::min(best, ratio);
        amag = -vals[c];
      }
    }
    if (q < 0) return 1;
    kernels::ftran(binv_, m_, column(q), alpha, opt_.exec);
    if (std::fabs(alpha[r] + amag) > 1e-7 * std::max(1.0, amag)) {
      // row and column disagree: numerical trouble, start over from a fresh factorization
      refactor();
      ++degenerate;
      continue;
    }
    degenerate = best <= 1e-12 ? degenerate + 1 : 0;
    pivot(r, q, alpha, &cols, &vals);
  }
}

void RevisedSimplex::drive_out_artificials() {
  std::vector<int> cols;
  std::vector<double> vals, alpha;
  for (int r = 0; r < m_; ++r) {
    int j = basis_[r];
    if (!is_aux(j) || sense_[aux_row(j)] != RowSense::Equal) continue;
    row_alpha(r, cols, vals);
    int q = -1;
    double mag = 1e-7;
    for (std::size_t c = 0; c < cols.size(); ++c)
      if (std::fabs(vals[c]) > mag) {
        mag = std::fabs(vals[c]);
        q = cols[c];
      }
    if (q < 0) continue;  // redundant row: its artificial stays basic at zero
    kernels::ftran(binv_, m_, column(q), alpha, opt_.exec);
    xb_[r] = 0.0;
    pivot(r, q, alpha);
  }
}

RevisedSimplex::Status RevisedSimplex::solve() {
  if (phase_ == 0) {
    for (int r = 0; r < m_; ++r)
      if (sense_[r] == RowSense::AtLeast && b_[r] > 0)
        throw std::logic_error(">= rows with positive rhs must be added after the first solve");
    basis_.resize(static_cast<std::size_t>(m_));
    binv_.assign(static_cast<std::size_t>(m_) * m_, 0.0);
    for (int r = 0; r < m_; ++r) {
      basis_[r] = nstruct_ + r;
      where_[nstruct_ + r] = r;
      binv_[static_cast<std::size_t>(r) * m_ + r] = 1.0 / aux_coef(r);
    }
    compute_row_norms();
    phase_ = 1;
    compute_xb();
    compute_reduced_costs();
    if (!primal_loop()) return Status::IterationLimit;
    refactor();
    double infeas = 0.0;
    for (int i = 0; i < m_; ++i)
      if (is_aux(basis_[i]) && sense_[aux_row(basis_[i])] == RowSense::Equal) infeas += std::fabs(xb_[i]);
    if (infeas > 1e-7) return Status::Infeasible;
    phase_ = 2;
    compute_reduced_costs();
    drive_out_artificials();
    compute_reduced_costs();
  }
  for (int round = 0; round < 50; ++round) {
    int ds = dual_loop();
    if (ds == 1) {
      refactor();
      ds = dual_loop();
      if (ds == 1) return Status::Infeasible;
    }
    if (ds == 2) return Status::IterationLimit;
    if (!primal_loop()) return Status::IterationLimit;
    bool feasible = std::all_of(xb_.begin(), xb_.end(), [&](double v) { return v >= -opt_.feas_tol; });
    if (feasible) return Status::Optimal;
  }
  return Status::IterationLimit;
}

double RevisedSimplex::objective() const {
  double s = 0.0;
  for (int i = 0; i < m_; ++i)
    if (!is_aux(basis_[i])) s += c_[basis_[i]] * xb_[i];
  return s;
}

std::vector<double> RevisedSimplex::primal() const {
  std::vector<double> x(static_cast<std::size_t>(nstruct_), 0.0);
  for (int i = 0; i < m_; ++i)
    if (!is_aux(basis_[i])) x[basis_[i]] = std::max(0.0, xb_[i]);
  return x;
}

}  // namespace otsp::lp
