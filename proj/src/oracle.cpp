#include "otsp/oracle.hpp"

#include <algorithm>
#include <limits>

#include "otsp/chains.hpp"
#include "otsp/error.hpp"

namespace otsp {

namespace {

constexpr Cost kInf = std::numeric_limits<Cost>::max() / 4;

// Path DP from `root` over the other vertices; `allowed(mask, v)` says whether v
// may follow the vertices in mask (root always visited). Returns the best cycle.
template <class Allowed>
OracleResult path_dp(const CostMatrix& c, Vertex root, Allowed allowed) {
  const int n = c.size();
  std::vector<Vertex> others;
  for (Vertex v = 0; v < n; ++v)
    if (v != root) others.push_back(v);
  const int m = static_cast<int>(others.size());
  const std::size_t full = (std::size_t{1} << m) - 1;
  std::vector<Cost> dp((full + 1) * static_cast<std::size_t>(m), kInf);
  std::vector<signed char> from((full + 1) * static_cast<std::size_t>(m), -1);
  auto at = [m](std::size_t mask, int j) { return mask * static_cast<std::size_t>(m) + static_cast<std::size_t>(j); };
  OracleResult res;
  for (int j = 0; j < m; ++j)
    if (allowed(std::size_t{0}, j)) dp[at(std::size_t{1} << j, j)] = c(root, others[j]);
  for (std::size_t mask = 1; mask <= full; ++mask)
    for (int j = 0; j < m; ++j) {
      const Cost cur = dp[at(mask, j)];
      if (cur >= kInf) continue;
      ++res.states;
      for (int l = 0; l < m; ++l) {
        if (mask >> l & 1 || !allowed(mask, l)) continue;
        const std::size_t nm = mask | std::size_t{1} << l;
        const Cost val = cur + c(others[j], others[l]);
        if (val < dp[at(nm, l)]) {
          dp[at(nm, l)] = val;
          from[at(nm, l)] = static_cast<signed char>(j);
        }
      }
    }
  res.cost = kInf;
  int last = -1;
  for (int j = 0; j < m; ++j)
    if (dp[at(full, j)] < kInf && dp[at(full, j)] + c(others[j], root) < res.cost) {
      res.cost = dp[at(full, j)] + c(others[j], root);
      last = j;
    }
  if (m == 0) {
    res.cost = 0;
    res.tour = Tour::from_cycle(c, {root});
    return res;
  }
  if (last < 0) return res;  // infeasible from this root
  std::vector<Vertex> rev;
  std::size_t mask = full;
  for (int j = last; j >= 0;) {
    rev.push_back(others[j]);
    const int p = from[at(mask, j)];
    mask &= ~(std::size_t{1} << j);
    j = p;
  }
  std::vector<Vertex> cycle{root};
  cycle.insert(cycle.end(), rev.rbegin(), rev.rend());
  res.tour = Tour::from_cycle(c, std::move(cycle));
  return res;
}

}  // namespace

OracleResult solve_exact(const Instance& inst, int max_n) {
  if (inst.n() > max_n)
    throw ResourceError("exact oracle: n = " + std::to_string(inst.n()) + " exceeds the cap " + std::to_string(max_n));
  if (max_n > 22) throw ResourceError("exact oracle: caps above 22 are not supported");
  const Vertex root = inst.d(0);
  std::vector<Vertex> others;
  for (Vertex v = 0; v < inst.n(); ++v)
    if (v != root) others.push_back(v);
  std::size_t ordered_bits = 0;
  for (std::size_t j = 0; j < others.size(); ++j)
    if (inst.is_ordered(others[j])) ordered_bits |= std::size_t{1} << j;
  auto allowed = [&](std::size_t mask, int j) {
    const Vertex v = others[static_cast<std::size_t>(j)];
    if (!inst.is_ordered(v)) return true;
    return inst.position(v) == __builtin_popcountll(mask & ordered_bits) + 1;
  };
  auto res = path_dp(inst.costs(), root, allowed);
  if (res.cost >= kInf) throw ConsistencyError("exact oracle found no feasible cycle");
  return res;
}

OracleResult solve_exact_chains(const ChainInstance& inst, int max_n) {
  if (inst.n() > max_n)
    throw ResourceError("exact chain oracle: n = " + std::to_string(inst.n()) + " exceeds the cap " +
                        std::to_string(max_n));
  if (max_n > 20) throw ResourceError("exact chain oracle: caps above 20 are not supported");
  const int n = inst.n();
  std::vector<Vertex> pred(static_cast<std::size_t>(n), -1);
  for (const auto& ch : inst.chains())
    for (std::size_t i = 1; i < ch.size(); ++i) pred[static_cast<std::size_t>(ch[i])] = ch[i - 1];
  OracleResult best;
  best.cost = kInf;
  for (Vertex s = 0; s < n; ++s) {
    if (pred[static_cast<std::size_t>(s)] >= 0) continue;  // a rotation never starts mid-chain
    auto idx = [s](Vertex v) { return v < s ? v : v - 1; };
    auto allowed = [&](std::size_t mask, int j) {
      const Vertex v = j < s ? j : j + 1;
      const Vertex p = pred[static_cast<std::size_t>(v)];
      return p < 0 || p == s || (mask >> idx(p) & 1);
    };
    auto r = path_dp(inst.costs(), s, allowed);
    best.states += r.states;
    if (r.cost < best.cost) {
      const auto states = best.states;
      best = std::move(r);
      best.states = states;
    }
  }
  if (best.cost >= kInf) throw ConsistencyError("exact chain oracle found no feasible cycle");
  return best;
}

namespace {

template <class Feasible>
OracleResult enumerate(const CostMatrix& c, Vertex root, Feasible feasible) {
  if (c.size() > 10) throw ResourceError("permutation enumeration is limited to n <= 10");
  std::vector<Vertex> rest;
  for (Vertex v = 0; v < c.size(); ++v)
    if (v != root) rest.push_back(v);
  OracleResult res;
  res.cost = kInf;
  do {
    std::vector<Vertex> cycle{root};
    cycle.insert(cycle.end(), rest.begin(), rest.end());
    ++res.states;
    if (!feasible(cycle)) continue;
    const Cost cost = cycle_cost(c, cycle);
    if (cost < res.cost) {
      res.cost = cost;
      res.tour = Tour::from_cycle(c, cycle);
    }
  } while (std::next_permutation(rest.begin(), rest.end()));
  if (res.cost >= kInf) throw ConsistencyError("enumeration found no feasible cycle");
  return res;
}

}  // namespace

OracleResult solve_bruteforce(const Instance& inst) {
  return enumerate(inst.costs(), inst.d(0),
                   [&](const std::vector<Vertex>& cyc) { return visits_in_cyclic_order(cyc, inst.order()); });
}

OracleResult solve_bruteforce_chains(const ChainInstance& inst) {
  return enumerate(inst.costs(), 0,
                   [&](const std::vector<Vertex>& cyc) { return check_chain_order(cyc, inst.chains()); });
}

}  // namespace otsp
