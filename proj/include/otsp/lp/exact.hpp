#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "otsp/rational.hpp"

namespace otsp::lp {

using RationalRow = std::vector<std::pair<int, Rational>>;

// min c^T x  s.t.  A x = b, x >= 0, all exact. Two-phase dense tableau, Bland's rule.
struct ExactLpResult {
  enum class Status { Optimal, Infeasible, Unbounded } status = Status::Infeasible;
  std::vector<Rational> x;
  Rational objective;
  long pivots = 0;
};

ExactLpResult solve_exact_lp(const std::vector<Rational>& c, const std::vector<RationalRow>& rows,
                             const std::vector<Rational>& b);

// Square sparse system A x = b (rows given sparsely over `ncols` = rows.size() unknowns).
// Markowitz-style pivoting. Returns nullopt if singular.
std::optional<std::vector<Rational>> solve_square_exact(const std::vector<RationalRow>& rows,
                                                        const std::vector<Rational>& b, int ncols);

// Best rational approximation p/q of v with q <= max_den (continued fractions).
Rational reconstruct_rational(double v, long max_den = 1'000'000);

}  // namespace otsp::lp
