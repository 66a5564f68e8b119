#include <doctest.h>

#include <algorithm>
#include <limits>

#include "otsp/error.hpp"
#include "otsp/oracle.hpp"
#include "otsp/rng.hpp"
#include "otsp/spanning.hpp"

using namespace otsp;

namespace {

// Minimum spanning tree cost by decoding every Pruefer sequence.
Cost brute_mst(const CostMatrix& c) {
  const int n = c.size();
  if (n == 2) return c(0, 1);
  std::vector<int> seq(static_cast<std::size_t>(n - 2), 0);
  Cost best = std::numeric_limits<Cost>::max();
  while (true) {
    std::vector<int> deg(static_cast<std::size_t>(n), 1);
    for (int v : seq) ++deg[v];
    Cost cost = 0;
    for (int v : seq) {
      int leaf = 0;
      while (deg[leaf] != 1) ++leaf;
      cost += c(leaf, v);
      --deg[leaf];
      --deg[v];
    }
    int u = -1, w = -1;
    for (int v = 0; v < n; ++v)
      if (deg[v] == 1) (u < 0 ? u : w) = v;
    best = std::min(best, cost + c(u, w));
    std::size_t i = 0;
    while (i < seq.size() && ++seq[i] == n) seq[i++] = 0;
    if (i == seq.size()) break;
  }
  return best;
}

CostMatrix random_metric(Rng& rng, int n) {
  std::vector<std::vector<Cost>> rows(static_cast<std::size_t>(n), std::vector<Cost>(static_cast<std::size_t>(n), 0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) rows[i][j] = rows[j][i] = static_cast<Cost>(1 + rng.below(40));
  return metric_closure(CostMatrix(rows));
}

}  // namespace

TEST_CASE("edge multiset") {
  EdgeMultiset m(4);
  m.add(0, 1);
  m.add(1, 0);
  m.add(2, 3);
  CHECK(m.multiplicity(1, 0) == 2);
  CHECK(m.degree(1) == 2);
  CHECK(m.odd_vertices() == std::vector<Vertex>{2, 3});
  CHECK_FALSE(m.is_connected());
  CHECK(m.components()[0] == m.components()[1]);
  CHECK(m.components()[0] != m.components()[2]);
  m.add(1, 2);
  m.add(3, 0);
  CHECK(m.is_connected());
  CHECK(m.is_eulerian() == false);  // 1 and 0 have degree 3
  m.remove(0, 1);
  CHECK(m.is_eulerian());
  CHECK_THROWS_AS(m.remove(0, 2), PreconditionError);

  auto circ = euler_circuit(m, 0);
  CHECK(circ.front() == 0);
  CHECK(circ.back() == 0);
  CHECK(circ.size() == m.size() + 1);
  EdgeMultiset seen(4);
  for (std::size_t i = 1; i < circ.size(); ++i) seen.add(circ[i - 1], circ[i]);
  CHECK(seen == m);
}

TEST_CASE("minimum spanning tree") {
  CostMatrix unit({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
  CHECK(minimum_spanning_tree(unit).cost == 2);

  Rng rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + trial % 6;
    auto c = random_metric(rng, n);
    const Vertex root = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(n)));
    auto t = minimum_spanning_tree(c, root);
    CHECK(t.cost == brute_mst(c));
    CHECK(t.edges.size() == static_cast<std::size_t>(n - 1));
    CHECK(t.parent[root] == -1);
    CHECK(t.as_multiset().is_connected());
    Cost sum = 0;
    for (Vertex v = 0; v < n; ++v)
      if (v != root) sum += t.out_edge_cost(c, v);
    CHECK(sum == t.cost);
  }
}

TEST_CASE("perfect matching and q-joins") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 4 + trial % 9;
    auto c = random_metric(rng, n);
    std::vector<Vertex> vs;
    for (Vertex v = 0; v < n; ++v)
      if (rng.below(3) != 0) vs.push_back(v);
    if (vs.size() % 2) vs.pop_back();
    const Cost dp = min_cost_perfect_matching_dp(c, vs).cost;
    CHECK(min_cost_perfect_matching_blossom(c, vs).cost == dp);
    auto m = min_cost_perfect_matching(c, vs);
    CHECK(m.cost == dp);
    CHECK(m.pairs.size() == vs.size() / 2);

    auto j = min_cost_q_join(c, vs);
    CHECK(j.cost(c) == dp);
    CHECK(j.odd_vertices() == vs);
  }
  CostMatrix unit({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
  CHECK(min_cost_q_join(unit, {}).empty());
  CHECK(min_cost_q_join(unit, {0, 2}).multiplicity(0, 2) == 1);
  CHECK_THROWS_AS(min_cost_q_join(unit, {0, 1, 2}), ParameterError);
}

TEST_CASE("blossom on larger sets against the DP") {
  Rng rng(23);
  for (int trial = 0; trial < 6; ++trial) {
    auto c = random_metric(rng, 18);
    std::vector<Vertex> vs(18);
    for (int i = 0; i < 18; ++i) vs[i] = i;
    CHECK(min_cost_perfect_matching_blossom(c, vs).cost == min_cost_perfect_matching_dp(c, vs).cost);
  }
}

TEST_CASE("christofides") {
  CostMatrix unit({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
  CHECK(christofides(unit).cost == 3);
  CHECK_THROWS_AS(christofides(CostMatrix({{0, 1}, {1, 0}})), ParameterError);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    // k = 2 puts no constraint on the cycle, so the oracle is plain TSP
    auto inst = generate(seed % 2 ? GenKind::Euclidean : GenKind::RandomClosure, 10, 2, seed);
    auto t = christofides(inst.costs());
    CHECK(is_permutation_cycle(t.cycle, 10));
    CHECK(t.cost == cycle_cost(inst.costs(), t.cycle));
    CHECK(2 * t.cost <= 3 * solve_exact(inst).cost);
  }
}
