#include <doctest.h>

#include <algorithm>

#include "otsp/chains.hpp"
#include "otsp/error.hpp"
#include "otsp/oracle.hpp"

using namespace otsp;

namespace {

void check_against_oracle(const ChainInstance& ci, const ChainResult& r) {
  const int l = ci.chain_count();
  const auto opt = solve_exact_chains(ci);
  CHECK(is_permutation_cycle(r.tour.cycle, ci.n()));
  CHECK(check_chain_order(r.tour.cycle, ci.chains()));
  CHECK(from_int64(r.tour.cost) <= chain_constant(l) * from_int64(opt.cost));
  // only the right guess (first chain head on an optimal tour) bounds every c_LP^j by OPT
  bool some_guess = false;
  for (const auto& g : r.guesses)
    some_guess |= std::all_of(g.c_lp.begin(), g.c_lp.end(), [&](const Rational& lp) { return lp <= from_int64(opt.cost); });
  CHECK(some_guess);
}

}  // namespace

TEST_CASE("one chain reduces to the ordered problem") {
  auto base = generate(GenKind::Euclidean, 9, 3, 8);
  ChainInstance ci(base.costs(), {base.order()});
  auto r = solve_chains(ci);
  REQUIRE(r.guesses.size() == 1);
  CHECK(r.guesses[0].guess == base.order().front());
  CHECK(r.guesses[0].c_lp.size() == 1);
  CHECK(check_tour(base, r.tour) == "");
  CHECK(from_int64(r.tour.cost) <= chain_constant(1) * from_int64(solve_exact(base).cost));
}

TEST_CASE("singleton chains: the head's own chain uses a root copy") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    auto ci = generate_chains(GenKind::RandomClosure, 8, {1, 1}, seed);
    auto r = solve_chains(ci);
    for (const auto& g : r.guesses) CHECK(g.copied_root);
    check_against_oracle(ci, r);
  }
  auto lone = generate_chains(GenKind::Euclidean, 7, {1}, 3);
  auto r = solve_chains(lone);
  check_against_oracle(lone, r);
}

TEST_CASE("two chains of two against the oracle") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    auto ci = generate_chains(seed % 2 ? GenKind::Euclidean : GenKind::RandomClosure, 9, {2, 2}, seed);
    auto r = solve_chains(ci);
    REQUIRE(r.guesses.size() == 2);
    check_against_oracle(ci, r);
    for (const auto& g : r.guesses)
      for (std::size_t i = 1; i < g.telescope.size(); ++i) CHECK(g.telescope[i] <= g.telescope[i - 1]);
    CHECK(r.tour.cost == std::min(r.guesses[0].cost, r.guesses[1].cost));
  }
}

TEST_CASE("three chains, randomized and derandomized") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    auto ci = generate_chains(GenKind::Euclidean, 10, {3, 2, 1}, 50 + seed);
    check_against_oracle(ci, solve_chains(ci));
    ChainOptions o;
    o.derandomized = false;
    o.seed = seed;
    auto r = solve_chains(ci, o);
    CHECK(check_chain_order(r.tour.cycle, ci.chains()));
    CHECK(r.tour == solve_chains(ci, o).tour);
  }
}

TEST_CASE("overlapping chains are rejected") {
  auto base = generate(GenKind::Euclidean, 6, 2, 1);
  CHECK_THROWS_AS(ChainInstance(base.costs(), {{0, 1}, {1, 2}}), ParameterError);
}
