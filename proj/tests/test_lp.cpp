#include <doctest.h>

#include <cmath>

#include "otsp/lp/exact.hpp"
#include "otsp/lp/kernels.hpp"
#include "otsp/lp/revised_simplex.hpp"
#include "otsp/rng.hpp"

using namespace otsp;
using namespace otsp::lp;

namespace {

Rational q(long a, long b = 1) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

}  // namespace

TEST_CASE("exact LP: small textbook problem") {
  // min -x - y  s.t.  x + 2y + s1 = 4,  3x + y + s2 = 6
  std::vector<Rational> c{q(-1), q(-1), q(0), q(0)};
  std::vector<RationalRow> rows{{{0, q(1)}, {1, q(2)}, {2, q(1)}}, {{0, q(3)}, {1, q(1)}, {3, q(1)}}};
  auto r = solve_exact_lp(c, rows, {q(4), q(6)});
  REQUIRE(r.status == ExactLpResult::Status::Optimal);
  CHECK(r.x[0] == q(8, 5));
  CHECK(r.x[1] == q(6, 5));
  CHECK(r.objective == q(-14, 5));

  auto inf = solve_exact_lp({q(1)}, {{{0, q(1)}}}, {q(-1)});
  CHECK(inf.status == ExactLpResult::Status::Infeasible);
  auto unb = solve_exact_lp({q(-1), q(0)}, {{{0, q(1)}, {1, q(-1)}}}, {q(0)});
  CHECK(unb.status == ExactLpResult::Status::Unbounded);
}

TEST_CASE("square solve and rational reconstruction") {
  std::vector<RationalRow> rows{{{0, q(2)}, {1, q(1)}}, {{0, q(1)}, {1, q(3)}}};
  auto x = solve_square_exact(rows, {q(1), q(2)}, 2);
  REQUIRE(x);
  CHECK((*x)[0] == q(1, 5));
  CHECK((*x)[1] == q(3, 5));
  CHECK_FALSE(solve_square_exact({{{0, q(1)}, {1, q(1)}}, {{0, q(2)}, {1, q(2)}}}, {q(1), q(2)}, 2));
  CHECK(reconstruct_rational(1.0 / 3.0) == q(1, 3));
  CHECK(reconstruct_rational(0.7142857142857143) == q(5, 7));
  CHECK(reconstruct_rational(-2.5) == q(-5, 2));
}

TEST_CASE("revised simplex agrees with the exact tableau") {
  Rng rng(3);
  int optimal = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const int nv = 3 + static_cast<int>(rng.below(6));
    const int m = 2 + static_cast<int>(rng.below(4));
    std::vector<double> cd(static_cast<std::size_t>(nv));
    std::vector<Rational> cq;
    for (auto& v : cd) {
      v = 1.0 + static_cast<double>(rng.below(9));
      cq.push_back(q(static_cast<long>(v)));
    }
    RevisedSimplex s(cd);
    std::vector<RationalRow> rows;
    std::vector<Rational> b;
    std::vector<std::pair<SparseColumn, long>> cuts;
    int slack = nv;
    for (int r = 0; r < m; ++r) {
      SparseColumn terms;
      RationalRow row;
      for (int j = 0; j < nv; ++j)
        if (r == 0 || rng.below(2)) {
          const long a = 1 + static_cast<long>(rng.below(4));
          terms.push_back({j, static_cast<double>(a)});
          row.push_back({j, q(a)});
        }
      if (terms.empty()) continue;
      const long rhs = 1 + static_cast<long>(rng.below(10));
      // equality rows go in before the first solve, >= rows are added later as cuts
      const bool ge = r > 0 && rng.below(2);
      if (ge) {
        cuts.push_back({terms, rhs});
        row.push_back({slack++, q(-1)});
      } else {
        s.add_row(terms, RowSense::Equal, static_cast<double>(rhs));
      }
      rows.push_back(row);
      b.push_back(q(rhs));
    }
    cq.resize(static_cast<std::size_t>(slack), q(0));
    auto ex = solve_exact_lp(cq, rows, b);
    auto st = s.solve();
    if (st == RevisedSimplex::Status::Optimal && !cuts.empty()) {
      for (const auto& [terms, rhs] : cuts) s.add_row(terms, RowSense::AtLeast, static_cast<double>(rhs));
      st = s.solve();
    }
    if (ex.status == ExactLpResult::Status::Infeasible) {
      CHECK(st == RevisedSimplex::Status::Infeasible);
      continue;
    }
    REQUIRE(ex.status == ExactLpResult::Status::Optimal);
    REQUIRE(st == RevisedSimplex::Status::Optimal);
    ++optimal;
    CHECK(s.objective() == doctest::Approx(ex.objective.get_d()).epsilon(1e-9));
  }
  CHECK(optimal >= 10);
}

TEST_CASE("warm start after adding rows") {
  // min x + y + 3z  s.t.  x + y + z = 2, then x >= 1.5, then z >= 0.5
  RevisedSimplex s({1.0, 1.0, 3.0});
  s.add_row({{0, 1.0}, {1, 1.0}, {2, 1.0}}, RowSense::Equal, 2.0);
  REQUIRE(s.solve() == RevisedSimplex::Status::Optimal);
  CHECK(s.objective() == doctest::Approx(2.0));
  s.add_row({{0, 1.0}}, RowSense::AtLeast, 1.5);
  REQUIRE(s.solve() == RevisedSimplex::Status::Optimal);
  CHECK(s.objective() == doctest::Approx(2.0));
  s.add_row({{2, 1.0}}, RowSense::AtLeast, 0.5);
  REQUIRE(s.solve() == RevisedSimplex::Status::Optimal);
  CHECK(s.objective() == doctest::Approx(3.0));
  auto x = s.primal();
  CHECK(x[0] + x[1] == doctest::Approx(1.5));
  CHECK(x[0] >= 1.5 - 1e-9);
  CHECK(x[2] == doctest::Approx(0.5));
}

TEST_CASE("parallel kernels match the serial reference") {
  Rng rng(8);
  for (int m : {5, 64, 300}) {
    std::vector<double> binv(static_cast<std::size_t>(m) * m);
    for (auto& v : binv) v = rng.unit() - 0.5;
    std::vector<double> alpha(static_cast<std::size_t>(m));
    for (auto& v : alpha) v = rng.unit() - 0.5;
    const int r = m / 2;
    alpha[r] = 1.5;

    auto a = binv, b = binv;
    std::vector<double> na(static_cast<std::size_t>(m)), nb(static_cast<std::size_t>(m));
    kernels::eta_update(a, m, r, alpha, Exec::Serial, &na);
    kernels::eta_update(b, m, r, alpha, Exec::Parallel, &nb);
    CHECK(a == b);
    CHECK(na == nb);
    // the pivot row is scaled, others eliminated against it
    CHECK(a[static_cast<std::size_t>(r) * m] == doctest::Approx(binv[static_cast<std::size_t>(r) * m] / 1.5));

    SparseColumn col;
    for (int i = 0; i < m; i += 3) col.push_back({i, rng.unit()});
    std::vector<double> fa, fb;
    kernels::ftran(binv, m, col, fa, Exec::Serial);
    kernels::ftran(binv, m, col, fb, Exec::Parallel);
    CHECK(fa == fb);
    double direct = 0;
    for (const auto& [i, v] : col) direct += binv[static_cast<std::size_t>(r) * m + i] * v;
    CHECK(fa[r] == doctest::Approx(direct));

    std::vector<SparseColumn> cols(40);
    for (auto& c : cols)
      for (int i = 0; i < m; i += 1 + static_cast<int>(rng.below(7))) c.push_back({i, rng.unit()});
    std::vector<int> which{0, 3, 7, 39, 12};
    std::vector<double> rho(alpha), pa, pb;
    kernels::pivot_row(rho, cols, which, pa, Exec::Serial);
    kernels::pivot_row(rho, cols, which, pb, Exec::Parallel);
    CHECK(pa == pb);
    REQUIRE(pa.size() == which.size());
  }
}
