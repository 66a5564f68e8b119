#include "otsp/lp/exact.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <set>

namespace otsp::lp {

namespace {

using Tableau = std::vector<std::vector<Rational>>;

void pivot_tableau(Tableau& t, int r, int q) {
  const std::size_t width = t[0].size();
  Rational p = t[r][q];
  for (std::size_t k = 0; k < width; ++k)
    if (sgn(t[r][k]) != 0) t[r][k] /= p;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (static_cast<int>(i) == r || sgn(t[i][q]) == 0) continue;
    Rational f = t[i][q];
    for (std::size_t k = 0; k < width; ++k)
      if (sgn(t[r][k]) != 0) t[i][k] -= f * t[r][k];
  }
}

// Minimizes the objective in row `obj` (reduced costs, last entry = -value) over the
// columns flagged in `allowed`. Returns false when unbounded.
bool run_bland(Tableau& t, std::vector<int>& basis, int obj, const std::vector<char>& allowed, long& pivots) {
  const int m = static_cast<int>(basis.size());
  const int rhs = static_cast<int>(t[0].size()) - 1;
  for (;;) {
    int q = -1;
    for (int j = 0; j < rhs; ++j)
      if (allowed[j] && sgn(t[obj][j]) < 0) {
        q = j;
        break;
      }
    if (q < 0) return true;
    int r = -1;
    Rational best;
    for (int i = 0; i < m; ++i) {
      if (sgn(t[i][q]) <= 0) continue;
      Rational ratio = t[i][rhs] / t[i][q];
      if (r < 0 || ratio < best || (ratio == best && basis[i] < basis[r])) {
        r = i;
        best = ratio;
      }
    }
    if (r < 0) return false;
    pivot_tableau(t, r, q);
    basis[r] = q;
    ++pivots;
  }
}

}  // namespace

ExactLpResult solve_exact_lp(const std::vector<Rational>& c, const std::vector<RationalRow>& rows,
                             const std::vector<Rational>& b) {
  const int n = static_cast<int>(c.size());
  const int m = static_cast<int>(rows.size());
  const int width = n + m + 1;
  // rows 0..m-1 constraints, m = phase-2 objective, m+1 = phase-1 objective
  Tableau t(static_cast<std::size_t>(m + 2), std::vector<Rational>(static_cast<std::size_t>(width)));
  std::vector<int> basis(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    bool neg = sgn(b[i]) < 0;
    for (const auto& [j, a] : rows[i]) t[i][j] += neg ? Rational(-a) : a;
    t[i][n + i] = 1;
    t[i][width - 1] = neg ? Rational(-b[i]) : b[i];
    basis[i] = n + i;
  }
  for (int j = 0; j < n; ++j) t[m][j] = c[j];
  // phase-1 reduced costs: -(sum of constraint rows) on structurals
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j)
      if (sgn(t[i][j]) != 0) t[m + 1][j] -= t[i][j];
  for (int i = 0; i < m; ++i) t[m + 1][width - 1] -= t[i][width - 1];

  ExactLpResult res;
  std::vector<char> allowed(static_cast<std::size_t>(width - 1), 1);
  run_bland(t, basis, m + 1, allowed, res.pivots);
  if (sgn(t[m + 1][width - 1]) != 0) {
    res.status = ExactLpResult::Status::Infeasible;
    return res;
  }
  // drive artificials out where possible; rows where that fails are redundant
  for (int i = 0; i < m; ++i) {
    if (basis[i] < n) continue;
    for (int j = 0; j < n; ++j)
      if (sgn(t[i][j]) != 0) {
        pivot_tableau(t, i, j);
        basis[i] = j;
        ++res.pivots;
        break;
      }
  }
  for (int j = n; j < width - 1; ++j) allowed[j] = 0;
  // phase-2 objective row was kept up to date by the pivots
  if (!run_bland(t, basis, m, allowed, res.pivots)) {
    res.status = ExactLpResult::Status::Unbounded;
    return res;
  }
  res.status = ExactLpResult::Status::Optimal;
  res.x.assign(static_cast<std::size_t>(n), Rational(0));
  for (int i = 0; i < m; ++i)
    if (basis[i] < n) res.x[basis[i]] = t[i][width - 1];
  res.objective = 0;
  for (int j = 0; j < n; ++j) res.objective += c[j] * res.x[j];
  return res;
}

std::optional<std::vector<Rational>> solve_square_exact(const std::vector<RationalRow>& rows_in,
                                                        const std::vector<Rational>& b_in, int ncols) {
  const int m = static_cast<int>(rows_in.size());
  if (m != ncols) return std::nullopt;
  std::vector<std::map<int, Rational>> rows(static_cast<std::size_t>(m));
  std::vector<std::set<int>> col_rows(static_cast<std::size_t>(ncols));
  for (int i = 0; i < m; ++i)
    for (const auto& [j, a] : rows_in[i]) {
      if (sgn(a) == 0) continue;
      rows[i][j] += a;
      col_rows[j].insert(i);
    }
  std::vector<Rational> b = b_in;
  std::vector<char> row_done(static_cast<std::size_t>(m), 0), col_done(static_cast<std::size_t>(ncols), 0);
  std::vector<std::pair<int, int>> order;
  for (int step = 0; step < m; ++step) {
    // column with fewest active rows, then the sparsest of those rows
    int pc = -1;
    std::size_t cnt = std::numeric_limits<std::size_t>::max();
    for (int j = 0; j < ncols; ++j)
      if (!col_done[j] && col_rows[j].size() < cnt) {
        cnt = col_rows[j].size();
        pc = j;
      }
    if (pc < 0 || cnt == 0) return std::nullopt;
    int pr = -1;
    for (int i : col_rows[pc])
      if (pr < 0 || rows[i].size() < rows[pr].size()) pr = i;
    const Rational piv = rows[pr][pc];
    for (int i : std::vector<int>(col_rows[pc].begin(), col_rows[pc].end())) {
      if (i == pr) continue;
      Rational f = rows[i][pc] / piv;
      for (const auto& [j, a] : rows[pr]) {
        Rational& dst = rows[i][j];
        dst -= f * a;
        if (sgn(dst) == 0) {
          rows[i].erase(j);
          col_rows[j].erase(i);
        } else {
          col_rows[j].insert(i);
        }
      }
      b[i] -= f * b[pr];
    }
    // the pivot row leaves the active set
    row_done[pr] = 1;
    col_done[pc] = 1;
    for (const auto& [j, a] : rows[pr]) col_rows[j].erase(pr);
    order.push_back({pr, pc});
  }
  std::vector<Rational> x(static_cast<std::size_t>(ncols));
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    auto [r, c] = *it;
    Rational s = b[r];
    for (const auto& [j, a] : rows[r])
      if (j != c) s -= a * x[j];
    x[c] = s / rows[r].at(c);
  }
  return x;
}

Rational reconstruct_rational(double v, long max_den) {
  if (!std::isfinite(v)) return Rational(0);
  bool neg = v < 0;
  double a = std::fabs(v);
  // convergents h/k
  mpz_class h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double frac = a;
  for (int iter = 0; iter < 64; ++iter) {
    double fl = std::floor(frac);
    if (fl > 1e15) break;
    mpz_class ai(static_cast<unsigned long>(fl));
    mpz_class h2 = ai * h1 + h0, k2 = ai * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    double rest = frac - fl;
    if (rest < 1e-12) break;
    frac = 1.0 / rest;
  }
  if (k1 == 0) return Rational(0);
  Rational r(h1, k1);
  r.canonicalize();
  return neg ? Rational(-r) : r;
}

}  // namespace otsp::lp
