#include <doctest.h>

#include <algorithm>
#include <json.hpp>
#include <numeric>

#include "otsp/assembly.hpp"
#include "otsp/error.hpp"
#include "otsp/rng.hpp"

using namespace otsp;

namespace {

Rational q(const char* s) { return parse_fraction(s); }

WeightedTree make_tree(std::vector<Edge> es, Rational mu) {
  WeightedTree t;
  for (auto& e : es) e = make_edge(e.first, e.second);
  std::sort(es.begin(), es.end());
  for (const auto& [a, b] : es) {
    t.vertices.push_back(a);
    t.vertices.push_back(b);
  }
  std::sort(t.vertices.begin(), t.vertices.end());
  t.vertices.erase(std::unique(t.vertices.begin(), t.vertices.end()), t.vertices.end());
  t.edges = std::move(es);
  t.mu = mu;
  return t;
}

WeightedTreeFamily single(Vertex s, Vertex t, std::vector<Edge> es) {
  WeightedTreeFamily f;
  f.s = s;
  f.t = t;
  f.trees.push_back(make_tree(std::move(es), Rational(1)));
  return f;
}

// Line metric: c(u, v) = |pos_u - pos_v|.
CostMatrix line(const std::vector<Cost>& pos) {
  std::vector<std::vector<Cost>> rows(pos.size(), std::vector<Cost>(pos.size()));
  for (std::size_t i = 0; i < pos.size(); ++i)
    for (std::size_t j = 0; j < pos.size(); ++j) rows[i][j] = std::abs(pos[i] - pos[j]);
  return CostMatrix(rows);
}

// Exhaustive connector: spanning trees over {big} + isolated with contracted costs.
Cost brute_connector(const CostMatrix& c, const std::vector<Vertex>& big, const std::vector<Vertex>& iso) {
  const int m = static_cast<int>(iso.size());
  std::vector<std::array<int, 3>> edges;  // node a, node b, cost; node 0 is the big component
  for (int a = 0; a <= m; ++a)
    for (int b = a + 1; b <= m; ++b) {
      Cost w;
      if (a == 0) {
        w = std::numeric_limits<Cost>::max();
        for (Vertex u : big) w = std::min(w, c(u, iso[static_cast<std::size_t>(b - 1)]));
      } else {
        w = c(iso[static_cast<std::size_t>(a - 1)], iso[static_cast<std::size_t>(b - 1)]);
      }
      edges.push_back({a, b, static_cast<int>(w)});
    }
  Cost best = std::numeric_limits<Cost>::max();
  const int e = static_cast<int>(edges.size());
  for (int mask = 0; mask < (1 << e); ++mask) {
    if (__builtin_popcount(static_cast<unsigned>(mask)) != m) continue;
    std::vector<int> par(static_cast<std::size_t>(m + 1));
    std::iota(par.begin(), par.end(), 0);
    std::function<int(int)> find = [&](int x) { return par[x] == x ? x : par[x] = find(par[x]); };
    Cost total = 0;
    bool ok = true;
    for (int i = 0; i < e && ok; ++i)
      if (mask >> i & 1) {
        int a = find(edges[i][0]), b = find(edges[i][1]);
        if (a == b) ok = false;
        par[a] = b;
        total += edges[i][2];
      }
    if (ok) best = std::min(best, total);
  }
  return best;
}

bool walk_in(const std::vector<Vertex>& walk, EdgeMultiset m) {
  try {
    for (std::size_t i = 0; i + 1 < walk.size(); ++i) m.remove(walk[i], walk[i + 1]);
  } catch (const PreconditionError&) {
    return false;
  }
  return true;
}

}  // namespace

TEST_CASE("sample_trees: singleton families and seed determinism") {
  ConnectingTreeDistribution d;
  d.n = 4;
  d.groups.push_back({{0, 1, 2}, {single(0, 1, {{0, 1}}), single(1, 2, {{1, 3}, {3, 2}}), single(2, 0, {{2, 0}})}});
  CHECK(d.validate() == "");
  for (std::uint64_t seed : {0ULL, 1ULL, 99ULL}) CHECK(sample_trees(d, seed) == TreeChoice{0, 0, 0});
}

TEST_CASE("sample_trees: four uniform trees are drawn about equally often") {
  ConnectingTreeDistribution d;
  d.n = 12;
  WeightedTreeFamily f;
  f.s = 0;
  f.t = 11;
  f.trees.push_back(make_tree({{0, 7}, {7, 8}, {8, 9}, {9, 10}, {10, 11}}, q("1/4")));
  f.trees.push_back(make_tree({{0, 1}, {1, 3}, {3, 5}, {5, 6}, {6, 11}, {4, 5}, {2, 4}}, q("1/4")));
  f.trees.push_back(make_tree({{0, 1}, {1, 2}, {2, 4}, {4, 6}, {6, 11}, {2, 3}, {3, 5}}, q("1/4")));
  f.trees.push_back(make_tree({{0, 1}, {1, 2}, {2, 4}, {4, 6}, {6, 11}}, q("1/4")));
  d.groups.push_back({{0, 11}, {f}});
  std::array<int, 4> hits{};
  for (std::uint64_t seed = 0; seed < 4000; ++seed) ++hits[sample_trees(d, seed).at(0)];
  for (int h : hits) {
    CHECK(h >= 800);
    CHECK(h <= 1200);
  }
  CHECK(sample_trees(d, 12345) == sample_trees(d, 12345));

  // skewed weights follow the thresholds
  d.groups[0].families[0].trees[0].mu = q("7/10");
  for (int i = 1; i < 4; ++i) d.groups[0].families[0].trees[static_cast<std::size_t>(i)].mu = q("1/10");
  int first = 0;
  for (std::uint64_t seed = 0; seed < 4000; ++seed) first += sample_trees(d, seed).at(0) == 0;
  CHECK(first > 2650);
  CHECK(first < 2950);
}

TEST_CASE("ordered_walk: single edges give the ordered cycle") {
  std::vector<WeightedTree> ts{make_tree({{2, 0}}, 1), make_tree({{0, 3}}, 1), make_tree({{3, 2}}, 1)};
  std::vector<const WeightedTree*> p{&ts[0], &ts[1], &ts[2]};
  CHECK(ordered_walk(p, {2, 0, 3}) == std::vector<Vertex>{2, 0, 3, 2});
  CHECK_THROWS_AS(ordered_walk(p, {2, 3, 0}), PreconditionError);
}

TEST_CASE("ordered_walk: four overlapping trees") {
  // d = 0, 1, 2, 3; trees share the inner vertices 4..7
  std::vector<WeightedTree> ts{
      make_tree({{0, 4}, {4, 5}, {5, 1}, {4, 6}}, 1),
      make_tree({{1, 5}, {5, 7}, {7, 2}}, 1),
      make_tree({{2, 6}, {6, 3}, {6, 7}}, 1),
      make_tree({{3, 7}, {7, 4}, {4, 0}, {7, 5}}, 1),
  };
  std::vector<const WeightedTree*> p{&ts[0], &ts[1], &ts[2], &ts[3]};
  auto w = ordered_walk(p, {0, 1, 2, 3});
  CHECK(w == std::vector<Vertex>{0, 4, 5, 1, 5, 7, 2, 6, 3, 7, 4, 0});
  EdgeMultiset h0(8);
  for (const auto& t : ts)
    for (const auto& [a, b] : t.edges) h0.add(a, b);
  CHECK(walk_in(w, h0));
}

TEST_CASE("connect_isolated: trivial cases and the e_v bound") {
  auto c = line({0, 10, 20, 3, 14});
  auto mst = minimum_spanning_tree(c, 0);
  EdgeMultiset h0(5);
  h0.add(0, 1);
  h0.add(1, 2);
  h0.add(2, 0);
  h0.add(0, 3);
  h0.add(3, 4);
  h0.add(4, 0);
  auto f = connect_isolated(c, h0, mst);
  CHECK(f.edges.empty());
  CHECK(f.isolated.empty());

  EdgeMultiset g(5);
  g.add(0, 1);
  g.add(1, 2);
  g.add(2, 0);
  g.add(0, 3, 2);
  f = connect_isolated(c, g, mst);
  CHECK(f.isolated == std::vector<Vertex>{4});
  CHECK(f.cost == 4);  // 4 at 14, nearest is 1 at 10
  CHECK(f.cost <= f.ev_bound);

  EdgeMultiset two(5);
  two.add(0, 1, 2);
  two.add(3, 4, 2);
  CHECK_THROWS_AS(connect_isolated(c, two, mst), PreconditionError);
}

TEST_CASE("connect_isolated matches exhaustive search") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    auto inst = generate(seed % 2 ? GenKind::Euclidean : GenKind::RandomClosure, 9, 2, seed);
    const auto& c = inst.costs();
    Rng rng(seed);
    const int iso_count = 1 + static_cast<int>(rng.below(4));
    std::vector<Vertex> perm(9);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = 8; i > 0; --i) std::swap(perm[static_cast<std::size_t>(i)], perm[rng.below(static_cast<std::uint64_t>(i + 1))]);
    std::vector<Vertex> iso(perm.begin(), perm.begin() + iso_count), big(perm.begin() + iso_count, perm.end());
    EdgeMultiset h0(9);
    for (std::size_t i = 1; i < big.size(); ++i) h0.add(big[i], big[rng.below(i)]);
    auto mst = minimum_spanning_tree(c, big.front());
    auto f = connect_isolated(c, h0, mst);
    CHECK(f.cost == brute_connector(c, big, iso));
    CHECK(f.cost <= f.ev_bound);
    auto h = h0;
    h.add_all(f.edges);
    CHECK(h.is_connected());
  }
}

TEST_CASE("parity_correct") {
  auto c = line({0, 4, 9, 11});
  EdgeMultiset cyc(4);
  cyc.add(0, 1);
  cyc.add(1, 2);
  cyc.add(2, 3);
  cyc.add(3, 0);
  CHECK(parity_correct(c, cyc).empty());
  EdgeMultiset path(4);
  path.add(0, 2);
  path.add(2, 1);
  path.add(1, 3);
  auto j = parity_correct(c, path);
  CHECK(j.size() == 1);
  CHECK(j.multiplicity(0, 3) == 1);
}

TEST_CASE("shortcut_to_tour") {
  auto c = line({0, 5, 8, 13, 2, 7});
  SUBCASE("a spanning cycle comes back unchanged") {
    EdgeMultiset m(6);
    std::vector<Vertex> cyc{0, 4, 1, 5, 2, 3, 0};
    for (std::size_t i = 0; i + 1 < cyc.size(); ++i) m.add(cyc[i], cyc[i + 1]);
    auto t = shortcut_to_tour(c, m, cyc, {0, 1, 2});
    CHECK(t.cycle == std::vector<Vertex>{0, 4, 1, 5, 2, 3});
  }
  SUBCASE("pendant doubled edges are merged after their anchor") {
    EdgeMultiset m(6);
    std::vector<Vertex> walk{0, 1, 2, 3, 0};
    for (std::size_t i = 0; i + 1 < walk.size(); ++i) m.add(walk[i], walk[i + 1]);
    m.add(1, 5, 2);
    m.add(0, 4, 2);
    auto t = shortcut_to_tour(c, m, walk, {0, 2, 3});
    CHECK(t.cycle == std::vector<Vertex>{0, 4, 1, 5, 2, 3});
    CHECK(t.cost <= m.cost(c));
  }
  SUBCASE("order vertices met early are skipped until due") {
    EdgeMultiset m(6);
    std::vector<Vertex> walk{0, 2, 1, 2, 3, 4, 5, 0};
    for (std::size_t i = 0; i + 1 < walk.size(); ++i) m.add(walk[i], walk[i + 1]);
    auto t = shortcut_to_tour(c, m, walk, {0, 1, 2});
    CHECK(t.cycle == std::vector<Vertex>{0, 1, 2, 3, 4, 5});
  }
  SUBCASE("preconditions") {
    EdgeMultiset odd(6);
    std::vector<Vertex> walk{0, 1, 2, 3, 4, 5, 0};
    for (std::size_t i = 0; i + 1 < walk.size(); ++i) odd.add(walk[i], walk[i + 1]);
    auto ok = odd;
    odd.add(1, 4);
    CHECK_THROWS_AS(shortcut_to_tour(c, odd, walk, {0, 1}), PreconditionError);
    EdgeMultiset split(6);
    split.add(0, 1, 2);
    split.add(2, 3, 2);
    CHECK_THROWS_AS(shortcut_to_tour(c, split, {0, 1, 0}, {0, 1}), PreconditionError);
    CHECK_THROWS_AS(shortcut_to_tour(c, ok, walk, {0, 2, 1}), PreconditionError);
  }
}

TEST_CASE("k = n: both variants return the ordered cycle at cost c_LP") {
  auto inst = generate(GenKind::Euclidean, 7, 7, 5);
  auto prep = prepare(inst);
  std::vector<Vertex> expect = inst.order();
  for (auto run : {run_derandomized(inst, prep), run_randomized(inst, prep, 3)}) {
    CHECK(run.assembly.tour.cycle == expect);
    CHECK(from_int64(run.assembly.tour.cost) == prep.lp.objective);
    CHECK(run.assembly.j.empty());
    CHECK(run.assembly.f.edges.empty());
    CHECK(run.certificate.ratio_vs_lp() == "1.0000000000");
  }
}

TEST_CASE("pipeline invariants on random instances") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    auto inst = generate(seed % 2 ? GenKind::RandomClosure : GenKind::Euclidean, 9 + static_cast<int>(seed % 4),
                         2 + static_cast<int>(seed % 4), seed);
    auto prep = prepare(inst);
    CHECK(prep.dist.validate() == "");
    CHECK(isolation_bound(prep.dist).ok);
    for (int s = 0; s < 5; ++s) {
      auto run = run_randomized(inst, prep, static_cast<std::uint64_t>(s));
      const auto& a = run.assembly;
      CHECK(check_tour(inst, a.tour) == "");
      CHECK(walk_in(a.walk, a.h0));
      auto comp = a.h0.components();
      for (Vertex v = 0; v < inst.n(); ++v)
        if (comp[static_cast<std::size_t>(v)] != comp[static_cast<std::size_t>(inst.d(0))]) CHECK(a.h0.degree(v) == 0);
      CHECK(a.tour.cost <= a.c_trees + a.f.cost + a.c_j);
      CHECK(from_int64(2 * a.c_j) <= prep.lp.objective);
    }
  }
}

namespace {

bool fractional(const RelaxationSolution& lp) {
  for (const auto& st : lp.strolls)
    for (const auto& [e, v] : st.x)
      if (v.get_den() != 1) return true;
  return false;
}

}  // namespace

TEST_CASE("randomized mean stays near the guarantee") {
  // integral LPs make every draw identical; only fractional ones say anything
  int used = 0;
  for (std::uint64_t seed = 0; seed < 60 && used < 3; ++seed) {
    auto inst = generate(seed % 2 ? GenKind::RandomClosure : GenKind::Euclidean, 10, 3, seed);
    auto prep = prepare(inst);
    if (!fractional(prep.lp)) continue;
    ++used;
    Rational total = 0;
    for (std::uint64_t s = 0; s < 200; ++s) total += from_int64(run_randomized(inst, prep, s).assembly.tour.cost);
    Rational mean_ratio = total / (200 * prep.lp.objective);
    MESSAGE("instance " << seed << ": mean ratio " << decimal_upper(mean_ratio, 6));
    CHECK(mean_ratio <= q("18679/10000") + q("5/100"));
  }
  CHECK(used == 3);
}

TEST_CASE("derandomized: exact guarantee and a non-increasing telescope") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    auto inst = generate(seed % 2 ? GenKind::RandomClosure : GenKind::Euclidean, 10, 4, 40 + seed);
    auto prep = prepare(inst);
    auto run = run_derandomized(inst, prep);
    const auto& c = run.certificate;
    CHECK(from_int64(c.cost) <= q("1868/1000") * c.c_lp);
    CHECK(from_int64(c.cost) <= guarantee_constant() * c.c_lp);
    REQUIRE(c.telescope.size() == 5);
    for (std::size_t i = 1; i < c.telescope.size(); ++i) CHECK(c.telescope[i] <= c.telescope[i - 1]);
    CHECK(c.telescope.front() <= guarantee_constant() * c.c_lp);

    // independent recomputation of each step
    const Rational join = c.c_lp / 2;
    for (int i = 0; i <= 4; ++i)
      CHECK(conditional_g(inst.costs(), prep.dist, prep.mst, run.assembly.choice, i, join) ==
            c.telescope[static_cast<std::size_t>(i)]);
    // total expectation: E[g] is the mu-average over the first stroll's trees
    Rational avg = 0;
    const auto& fam = prep.dist.family(0);
    for (std::size_t j = 0; j < fam.trees.size(); ++j) {
      TreeChoice ch{j};
      avg += fam.trees[j].mu * conditional_g(inst.costs(), prep.dist, prep.mst, ch, 1, join);
    }
    CHECK(avg == c.telescope.front());
    CHECK(run_derandomized(inst, prep).assembly.tour == run.assembly.tour);
  }
}

TEST_CASE("certificate JSON") {
  auto inst = generate(GenKind::Euclidean, 8, 3, 2);
  auto run = solve_randomized(inst, 11);
  auto j = nlohmann::json::parse(run.certificate.to_json());
  CHECK(j["seed"] == 11);
  CHECK(j["cost"] == run.assembly.tour.cost);
  CHECK(parse_fraction(j["c_lp"].get<std::string>()) == run.certificate.c_lp);
  for (const char* key : {"ratio_vs_lp", "c_trees", "c_F", "c_J"}) CHECK(j.contains(key));
  auto d = nlohmann::json::parse(solve_derandomized(inst).certificate.to_json());
  CHECK(d["seed"].is_null());
}
