#include "otsp/chains.hpp"

#include <algorithm>
#include <json.hpp>

#include "otsp/error.hpp"

namespace otsp {

bool check_chain_order(const std::vector<Vertex>& cycle, const std::vector<std::vector<Vertex>>& chains) {
  const int n = static_cast<int>(cycle.size());
  std::vector<int> pos(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    if (cycle[static_cast<std::size_t>(i)] < 0 || cycle[static_cast<std::size_t>(i)] >= n) return false;
    pos[static_cast<std::size_t>(cycle[static_cast<std::size_t>(i)])] = i;
  }
  for (const auto& ch : chains)
    for (Vertex v : ch)
      if (v < 0 || v >= n || pos[static_cast<std::size_t>(v)] < 0) return false;
  for (int dir : {1, -1})
    for (int start = 0; start < n; ++start) {
      auto rank = [&](Vertex v) { return ((pos[static_cast<std::size_t>(v)] - start) * dir % n + n) % n; };
      bool ok = true;
      for (const auto& ch : chains) {
        for (std::size_t i = 1; i < ch.size() && ok; ++i) ok = rank(ch[i - 1]) < rank(ch[i]);
        if (!ok) break;
      }
      if (ok) return true;
    }
  return false;
}

namespace {

// Costs with a zero-distance copy of `root` appended as vertex n.
CostMatrix with_copy(const CostMatrix& c, Vertex root) {
  auto rows = c.rows();
  auto copy = rows[static_cast<std::size_t>(root)];
  copy.push_back(0);
  for (auto& r : rows) r.push_back(r[static_cast<std::size_t>(root)]);
  rows.push_back(std::move(copy));
  return CostMatrix(rows, c.scale());
}

GuessCertificate run_guess(const ChainInstance& inst, std::size_t head, const ChainOptions& opts) {
  const auto& chains = inst.chains();
  GuessCertificate gc;
  gc.guess = chains[head].front();
  gc.copied_root = chains[head].size() == 1;
  const CostMatrix costs = gc.copied_root ? with_copy(inst.costs(), gc.guess) : inst.costs();
  const int n = costs.size();

  ConnectingTreeDistribution dist;
  dist.n = n;
  // every group starts at d_0; blocks follow chain index order
  std::vector<Vertex> visit{gc.guess};
  std::vector<Rational> lp(chains.size());
  for (std::size_t j = 0; j < chains.size(); ++j) {
    std::vector<Vertex> order;
    if (j == head)
      order = gc.copied_root ? std::vector<Vertex>{gc.guess, n - 1} : chains[j];
    else {
      order.push_back(gc.guess);
      order.insert(order.end(), chains[j].begin(), chains[j].end());
    }
    Instance sub(costs, order);
    auto prep = prepare(sub, opts.assembly);
    lp[j] = prep.lp.objective;
    dist.groups.push_back(std::move(prep.dist.groups.front()));
    visit.insert(visit.end(), order.begin() + 1, order.end());
  }
  if (dist.visit_order() != visit) throw ConsistencyError("chain visit order mismatch");
  if (auto why = dist.validate(); !why.empty()) throw ConsistencyError("chain tree distribution: " + why);
  gc.c_lp = lp;

  const Rational lp_min = *std::min_element(lp.begin(), lp.end());
  const Rational lp_max = *std::max_element(lp.begin(), lp.end());
  const auto mst = minimum_spanning_tree(costs, gc.guess);
  TreeChoice choice = opts.derandomized ? derandomized_choice(costs, dist, mst, lp_min / 2, &gc.telescope)
                                        : sample_trees(dist, opts.seed);
  auto a = assemble(costs, dist, choice, mst);

  gc.c_trees = a.c_trees;
  gc.c_f = a.f.cost;
  gc.c_j = a.c_j;
  gc.c_mst = mst.cost;
  gc.ev_bound = a.f.ev_bound;
  gc.worst_isolation = isolation_bound(dist).worst;
  if (!isolation_bound(dist).ok) throw ConsistencyError("joint isolation probability above 1/e^l");
  if (!visits_in_cyclic_order(a.tour.cycle, visit)) throw ConsistencyError("chain tour leaves the block order");
  if (a.tour.cost > a.c_trees + a.f.cost + a.c_j) throw ConsistencyError("tour cost exceeds c(H_0) + c(F) + c(J)");
  if (from_int64(gc.c_mst) > lp_min) throw ConsistencyError("c(MST) exceeds a chain LP value");
  if (from_int64(2 * gc.c_j) > lp_min) throw ConsistencyError("c(J) exceeds c_LP^j / 2");
  if (opts.derandomized) {
    gc.g = gc.telescope.back();
    if (from_int64(a.tour.cost) > gc.g) throw ConsistencyError("tour cost exceeds the final g value");
    if (gc.g > chain_constant(static_cast<int>(chains.size())) * lp_max)
      throw ConsistencyError("g exceeds (l + 1/2 + 1/e^l) * max_j c_LP^j");
  }

  std::vector<Vertex> cycle = a.tour.cycle;
  if (gc.copied_root) cycle.erase(std::find(cycle.begin(), cycle.end(), n - 1));
  gc.tour = Tour::from_cycle(inst.costs(), std::move(cycle));
  if (gc.tour.cost > a.tour.cost) throw ConsistencyError("dropping the root copy made the tour longer");
  if (!is_permutation_cycle(gc.tour.cycle, inst.n()) || !check_chain_order(gc.tour.cycle, chains))
    throw ConsistencyError("chain tour is infeasible");
  gc.cost = gc.tour.cost;
  return gc;
}

}  // namespace

ChainResult solve_chains(const ChainInstance& inst, const ChainOptions& opts) {
  if (inst.n() < 2) throw ParameterError("need at least two vertices");
  ChainResult res;
  if (!opts.derandomized) res.seed = opts.seed;
  for (std::size_t j = 0; j < inst.chains().size(); ++j) res.guesses.push_back(run_guess(inst, j, opts));
  for (std::size_t j = 1; j < res.guesses.size(); ++j)
    if (res.guesses[j].cost < res.guesses[res.best].cost) res.best = j;
  res.tour = res.guesses[res.best].tour;
  return res;
}

std::string ChainResult::to_json() const {
  nlohmann::ordered_json j;
  j["cost"] = tour.cost;
  j["tour"] = tour.cycle;
  if (seed)
    j["seed"] = *seed;
  else
    j["seed"] = nullptr;
  j["best_guess"] = guesses.at(best).guess;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& g : guesses) {
    nlohmann::ordered_json o;
    o["guess"] = g.guess;
    auto lps = nlohmann::ordered_json::array();
    for (const auto& v : g.c_lp) lps.push_back(to_fraction_string(v));
    o["c_lp_j"] = lps;
    o["cost"] = g.cost;
    o["c_trees"] = g.c_trees;
    o["c_F"] = g.c_f;
    o["c_J"] = g.c_j;
    o["ev_bound"] = g.ev_bound;
    if (!g.telescope.empty()) o["g"] = to_fraction_string(g.g);
    arr.push_back(o);
  }
  j["guesses"] = arr;
  return j.dump();
}

}  // namespace otsp
