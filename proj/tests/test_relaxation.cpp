#include <doctest.h>

#include <algorithm>

#include "otsp/error.hpp"
#include "otsp/oracle.hpp"
#include "otsp/relaxation.hpp"

using namespace otsp;

namespace {

Rational q(const char* s) { return parse_fraction(s); }

StrollPoint ladder_point() {
  std::map<Edge, Rational> x;
  auto put = [&](int u, int v, const char* val) { x[make_edge(u, v)] = q(val); };
  put(0, 1, "3/4");
  put(1, 2, "1/2");
  put(1, 3, "1/4");
  put(2, 3, "1/4");
  put(2, 4, "3/4");
  put(3, 5, "1/2");
  put(4, 5, "1/4");
  put(4, 6, "1/2");
  put(5, 6, "1/4");
  put(6, 11, "3/4");
  put(0, 7, "1/4");
  put(7, 8, "1/4");
  put(8, 9, "1/4");
  put(9, 10, "1/4");
  put(10, 11, "1/4");
  return make_stroll_point(0, 0, 11, 12, x);
}

}  // namespace

TEST_CASE("separation on hand-built points") {
  CHECK(check_stroll_feasible(ladder_point()) == "");

  auto path = make_stroll_point(0, 0, 2, 3, {{make_edge(0, 1), Rational(1)}, {make_edge(1, 2), Rational(1)}});
  CHECK(path.y[1] == 1);
  CHECK(separate_stroll(path).empty());

  auto zero = make_stroll_point(0, 0, 2, 3, {});
  auto cuts = separate_stroll(zero);
  REQUIRE(cuts.size() == 1);
  CHECK(cuts[0].family == CutFamily::SourceSink);
  CHECK(cuts[0].violation == 1);
  CHECK(std::find(cuts[0].side.begin(), cuts[0].side.end(), 0) != cuts[0].side.end());
  CHECK(std::find(cuts[0].side.begin(), cuts[0].side.end(), 2) == cuts[0].side.end());

  // s-t edge plus a detached half-integral triangle: only a vertex cut is violated
  std::map<Edge, Rational> x{{make_edge(0, 1), Rational(1)}};
  for (auto [u, v] : {Edge{2, 3}, Edge{3, 4}, Edge{2, 4}}) x[make_edge(u, v)] = q("1/2");
  auto island = make_stroll_point(0, 0, 1, 5, x);
  auto vc = separate_stroll(island);
  REQUIRE(vc.size() == 1);
  CHECK(vc[0].family == CutFamily::Vertex);
  CHECK(vc[0].side == std::vector<Vertex>{2, 3, 4});
  CHECK(vc[0].violation == 1);
  CHECK(check_stroll_feasible(island) != "");

  auto bad = ladder_point();
  bad.y[3] += q("1/8");
  CHECK(check_stroll_feasible(bad) != "");
}

TEST_CASE("k = n: every stroll is the direct edge") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    auto inst = generate(GenKind::Euclidean, 7, 7, seed);
    auto sol = solve_relaxation(inst);
    CHECK(verify_relaxation(inst, sol) == "");
    Cost cycle = 0;
    for (int i = 0; i < inst.k(); ++i) cycle += inst.costs()(inst.d(i), inst.d(i + 1));
    CHECK(sol.objective == cycle);
    // each stroll costs at least c(s, t), so equality forces it to be tight everywhere
    for (const auto& p : sol.strolls) CHECK(p.cost(inst.costs()) == inst.costs()(p.s, p.t));
    auto hk = aggregate_held_karp(sol, inst.n());
    CHECK(hk.ok);
    CHECK(hk.min_cut == 2);
  }
}

TEST_CASE("LP value never exceeds the optimum") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    auto inst = generate(seed % 2 ? GenKind::Euclidean : GenKind::RandomClosure, 8, 3, seed);
    auto sol = solve_relaxation(inst);
    CHECK(verify_relaxation(inst, sol) == "");
    CHECK(sol.objective <= solve_exact(inst).cost);
    CHECK(sol.strolls.size() == 3u);
    CHECK(aggregate_held_karp(sol, inst.n()).ok);
  }
}

TEST_CASE("held-karp aggregate rejects a missing stroll") {
  auto inst = generate(GenKind::Euclidean, 8, 4, 2);
  auto sol = solve_relaxation(inst);
  sol.strolls.pop_back();
  CHECK_THROWS_AS(aggregate_held_karp(sol, inst.n()), ConsistencyError);
}

TEST_CASE("monotone under a cost decrease") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto inst = generate(GenKind::RandomClosure, 8, 3, seed);
    auto rows = inst.costs().rows();
    rows[1][5] = rows[5][1] = rows[1][5] / 3;
    Instance cheaper(metric_closure(CostMatrix(rows)), inst.order());
    CHECK(solve_relaxation(cheaper).objective <= solve_relaxation(inst).objective);
  }
}

TEST_CASE("serial and parallel solves agree, json round trip verifies") {
  auto inst = generate(GenKind::Euclidean, 10, 3, 7);
  auto a = solve_relaxation(inst);
  auto b = solve_relaxation(inst, {lp::Exec::Parallel, 0});
  CHECK(a.objective == b.objective);
  auto back = relaxation_from_json(relaxation_to_json(a), inst);
  CHECK(back.objective == a.objective);
  CHECK(back.strolls == a.strolls);
  CHECK(verify_relaxation(inst, back) == "");

  auto tampered = a;
  tampered.objective += 1;
  CHECK(verify_relaxation(inst, tampered) != "");
}
