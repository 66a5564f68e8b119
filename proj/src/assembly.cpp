#include "otsp/assembly.hpp"

#include <algorithm>
#include <exception>
#include <json.hpp>
#include <limits>
#include <numeric>

#include "otsp/error.hpp"
#include "otsp/rng.hpp"

namespace otsp {

namespace {

std::string vstr(Vertex v) { return std::to_string(v); }

// mu-weighted expected cost and per-vertex coverage of one family.
struct FamilyStats {
  Rational expected;
  std::vector<Rational> coverage;
};

FamilyStats family_stats(const CostMatrix& costs, const WeightedTreeFamily& fam, int n) {
  FamilyStats st;
  st.expected = 0;
  st.coverage.assign(static_cast<std::size_t>(n), Rational(0));
  for (const auto& t : fam.trees) {
    st.expected += t.mu * from_int64(t.cost(costs));
    for (Vertex v : t.vertices) st.coverage[static_cast<std::size_t>(v)] += t.mu;
  }
  return st;
}

std::vector<FamilyStats> all_stats(const CostMatrix& costs, const ConnectingTreeDistribution& dist) {
  std::vector<FamilyStats> out;
  for (int i = 0; i < dist.stroll_count(); ++i) out.push_back(family_stats(costs, dist.family(i), dist.n));
  return out;
}

mpz_class uniform_below(Rng& rng, const mpz_class& bound) {
  const auto bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  for (;;) {
    mpz_class r = 0;
    for (std::size_t got = 0; got < bits; got += 64) {
      r <<= 64;
      r += mpz_class(static_cast<unsigned long>(rng.next()));
    }
    mpz_tdiv_r_2exp(r.get_mpz_t(), r.get_mpz_t(), bits);
    if (r < bound) return r;
  }
}

std::vector<char> order_mask(const std::vector<Vertex>& order, int n) {
  std::vector<char> in(static_cast<std::size_t>(n), 0);
  for (Vertex d : order) in[static_cast<std::size_t>(d)] = 1;
  return in;
}

std::vector<const WeightedTree*> chosen_trees(const ConnectingTreeDistribution& dist, const TreeChoice& choice) {
  if (static_cast<int>(choice.size()) != dist.stroll_count())
    throw ParameterError("tree choice has " + std::to_string(choice.size()) + " entries for " +
                         std::to_string(dist.stroll_count()) + " strolls");
  std::vector<const WeightedTree*> out;
  for (int i = 0; i < dist.stroll_count(); ++i) {
    const auto& fam = dist.family(i);
    if (choice[static_cast<std::size_t>(i)] >= fam.trees.size())
      throw ParameterError("tree choice out of range for stroll " + std::to_string(i));
    out.push_back(&fam.trees[choice[static_cast<std::size_t>(i)]]);
  }
  return out;
}

}  // namespace

int ConnectingTreeDistribution::stroll_count() const {
  int k = 0;
  for (const auto& g : groups) k += static_cast<int>(g.families.size());
  return k;
}

const WeightedTreeFamily& ConnectingTreeDistribution::family(int flat) const {
  for (const auto& g : groups) {
    if (flat < static_cast<int>(g.families.size())) return g.families[static_cast<std::size_t>(flat)];
    flat -= static_cast<int>(g.families.size());
  }
  throw ParameterError("stroll index out of range");
}

std::vector<Vertex> ConnectingTreeDistribution::stops() const {
  std::vector<Vertex> out;
  for (const auto& g : groups)
    for (const auto& f : g.families) out.push_back(f.s);
  return out;
}

std::vector<Vertex> ConnectingTreeDistribution::visit_order() const {
  std::vector<Vertex> out;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (const auto& g : groups)
    for (Vertex d : g.order)
      if (!seen[static_cast<std::size_t>(d)]) {
        seen[static_cast<std::size_t>(d)] = 1;
        out.push_back(d);
      }
  return out;
}

std::string ConnectingTreeDistribution::validate() const {
  if (groups.empty()) return "no groups";
  const Vertex root = groups.front().order.front();
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    const auto& g = groups[gi];
    const std::string gname = "group " + std::to_string(gi);
    if (g.order.size() < 2 || g.families.size() != g.order.size())
      return gname + ": needs one family per consecutive pair of at least two order vertices";
    if (g.order.front() != root) return gname + ": does not start at the shared root " + vstr(root);
    for (Vertex d : g.order)
      if (d < 0 || d >= n) return gname + ": order vertex out of range";
    auto in = order_mask(g.order, n);
    std::vector<Rational> cover(static_cast<std::size_t>(n), Rational(0));
    for (std::size_t i = 0; i < g.families.size(); ++i) {
      const auto& f = g.families[i];
      const Vertex s = g.order[i], t = g.order[(i + 1) % g.order.size()];
      const std::string fname = gname + " stroll " + std::to_string(i);
      if (f.s != s || f.t != t) return fname + ": endpoints differ from the order";
      if (f.trees.empty()) return fname + ": empty family";
      Rational total = 0;
      for (const auto& tr : f.trees) {
        if (sgn(tr.mu) <= 0) return fname + ": non-positive weight";
        total += tr.mu;
        if (!tr.contains(s) || !tr.contains(t)) return fname + ": tree misses an endpoint";
        if (tr.edges.size() + 1 != tr.vertices.size()) return fname + ": edge count is not |V| - 1";
        for (Vertex v : tr.vertices) {
          if (v < 0 || v >= n) return fname + ": vertex out of range";
          if (in[static_cast<std::size_t>(v)] && v != s && v != t)
            return fname + ": tree meets order vertex " + vstr(v);
          cover[static_cast<std::size_t>(v)] += tr.mu;
        }
      }
      if (total != 1) return fname + ": weights sum to " + to_fraction_string(total);
    }
    for (Vertex v = 0; v < n; ++v)
      if (!in[static_cast<std::size_t>(v)] && cover[static_cast<std::size_t>(v)] != 1)
        return gname + ": joint coverage of " + vstr(v) + " is " + to_fraction_string(cover[static_cast<std::size_t>(v)]);
  }
  return {};
}

ConnectingTreeDistribution build_distribution(const Instance& inst, const RelaxationSolution& sol,
                                              const DecompositionOptions& opts, lp::Exec exec) {
  const int k = inst.k();
  if (static_cast<int>(sol.strolls.size()) != k) throw ParameterError("relaxation has the wrong number of strolls");
  ConnectingTreeDistribution dist;
  dist.n = inst.n();
  dist.groups.push_back({inst.order(), std::vector<WeightedTreeFamily>(static_cast<std::size_t>(k))});
  auto& fams = dist.groups.front().families;
  std::vector<std::exception_ptr> errs(static_cast<std::size_t>(k));
#pragma omp parallel for schedule(dynamic) if (exec == lp::Exec::Parallel)
  for (int i = 0; i < k; ++i) {
    try {
      const auto& p = sol.strolls[static_cast<std::size_t>(i)];
      if (p.s != inst.d(i) || p.t != inst.d(i + 1))
        throw ParameterError("stroll " + std::to_string(i) + " does not run from d_i to d_{i+1}");
      fams[static_cast<std::size_t>(i)] = decompose(p, opts);
    } catch (...) {
      errs[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
  return dist;
}

TreeChoice sample_trees(const ConnectingTreeDistribution& dist, std::uint64_t seed) {
  TreeChoice out;
  for (int i = 0; i < dist.stroll_count(); ++i) {
    const auto& fam = dist.family(i);
    mpz_class den = 1;
    for (const auto& t : fam.trees) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.mu.get_den().get_mpz_t());
    Rng rng(substream_seed(seed, static_cast<std::uint64_t>(i)));
    const mpz_class r = uniform_below(rng, den);
    mpz_class acc = 0;
    std::size_t pick = fam.trees.size() - 1;
    for (std::size_t j = 0; j < fam.trees.size(); ++j) {
      acc += fam.trees[j].mu.get_num() * (den / fam.trees[j].mu.get_den());
      if (r < acc) {
        pick = j;
        break;
      }
    }
    out.push_back(pick);
  }
  return out;
}

std::vector<Vertex> ordered_walk(const std::vector<const WeightedTree*>& trees, const std::vector<Vertex>& stops) {
  if (trees.size() != stops.size() || trees.empty()) throw ParameterError("ordered_walk: one tree per stop required");
  std::vector<Vertex> walk{stops.front()};
  for (std::size_t i = 0; i < trees.size(); ++i) {
    const auto& tr = *trees[i];
    const Vertex s = stops[i], t = stops[(i + 1) % stops.size()];
    if (!tr.contains(s) || !tr.contains(t))
      throw PreconditionError("ordered_walk: tree " + std::to_string(i) + " misses " + vstr(s) + " or " + vstr(t));
    // parent pointers toward s over the tree's own vertex list
    const auto& vs = tr.vertices;
    auto idx = [&](Vertex v) { return static_cast<std::size_t>(std::lower_bound(vs.begin(), vs.end(), v) - vs.begin()); };
    std::vector<std::vector<Vertex>> adj(vs.size());
    for (const auto& [a, b] : tr.edges) {
      adj[idx(a)].push_back(b);
      adj[idx(b)].push_back(a);
    }
    std::vector<Vertex> parent(vs.size(), -1);
    std::vector<char> seen(vs.size(), 0);
    std::vector<Vertex> queue{s};
    seen[idx(s)] = 1;
    for (std::size_t h = 0; h < queue.size(); ++h)
      for (Vertex u : adj[idx(queue[h])])
        if (!seen[idx(u)]) {
          seen[idx(u)] = 1;
          parent[idx(u)] = queue[h];
          queue.push_back(u);
        }
    if (!seen[idx(t)]) throw PreconditionError("ordered_walk: tree " + std::to_string(i) + " is disconnected");
    std::vector<Vertex> path;
    for (Vertex v = t; v != s; v = parent[idx(v)]) path.push_back(v);
    walk.insert(walk.end(), path.rbegin(), path.rend());
  }
  return walk;
}

Connector connect_isolated(const CostMatrix& costs, const EdgeMultiset& h0, const OrientedMst& mst) {
  const int n = h0.vertex_count();
  const auto comp = h0.components();
  const int big = comp[static_cast<std::size_t>(mst.root)];
  Connector out;
  out.edges = EdgeMultiset(n);
  std::vector<char> in(static_cast<std::size_t>(n), 0);
  for (Vertex v = 0; v < n; ++v) {
    if (comp[static_cast<std::size_t>(v)] == big) {
      in[static_cast<std::size_t>(v)] = 1;
    } else if (h0.degree(v) > 0) {
      throw PreconditionError("connect_isolated: vertex " + vstr(v) +
                              " lies in a second non-trivial component of H_0");
    } else {
      out.isolated.push_back(v);
      out.ev_bound += mst.out_edge_cost(costs, v);
    }
  }
  // Prim from the big component; with singletons only this is the optimum.
  constexpr Cost inf = std::numeric_limits<Cost>::max();
  std::vector<Cost> best(static_cast<std::size_t>(n), inf);
  std::vector<Vertex> via(static_cast<std::size_t>(n), -1);
  auto relax = [&](Vertex u) {
    for (Vertex v : out.isolated)
      if (!in[static_cast<std::size_t>(v)] && costs(u, v) < best[static_cast<std::size_t>(v)]) {
        best[static_cast<std::size_t>(v)] = costs(u, v);
        via[static_cast<std::size_t>(v)] = u;
      }
  };
  for (Vertex u = 0; u < n; ++u)
    if (in[static_cast<std::size_t>(u)]) relax(u);
  for (std::size_t step = 0; step < out.isolated.size(); ++step) {
    Vertex pick = -1;
    for (Vertex v : out.isolated)
      if (!in[static_cast<std::size_t>(v)] && (pick < 0 || best[static_cast<std::size_t>(v)] < best[static_cast<std::size_t>(pick)]))
        pick = v;
    in[static_cast<std::size_t>(pick)] = 1;
    out.edges.add(pick, via[static_cast<std::size_t>(pick)]);
    out.cost += best[static_cast<std::size_t>(pick)];
    relax(pick);
  }
  if (out.cost > out.ev_bound)
    throw ConsistencyError("connector cost " + std::to_string(out.cost) + " exceeds the e_v bound " +
                           std::to_string(out.ev_bound));
  return out;
}

EdgeMultiset parity_correct(const CostMatrix& costs, const EdgeMultiset& h) {
  return min_cost_q_join(costs, h.odd_vertices());
}

Tour shortcut_to_tour(const CostMatrix& costs, const EdgeMultiset& m, const std::vector<Vertex>& walk,
                      const std::vector<Vertex>& order) {
  const int n = m.vertex_count();
  if (!m.is_eulerian()) throw PreconditionError("shortcut: multigraph is not connected and Eulerian");
  if (walk.size() < 2 || walk.front() != walk.back()) throw PreconditionError("shortcut: walk is not closed");
  if (order.empty()) throw PreconditionError("shortcut: empty order");

  EdgeMultiset rest = m;
  for (std::size_t i = 0; i + 1 < walk.size(); ++i) rest.remove(walk[i], walk[i + 1]);

  // the remainder is even, so each of its components is one closed walk
  std::vector<std::vector<Vertex>> others;
  {
    auto comp = rest.components();
    std::vector<char> done(static_cast<std::size_t>(n), 0);
    for (Vertex v = 0; v < n; ++v)
      if (rest.degree(v) > 0 && !done[static_cast<std::size_t>(comp[static_cast<std::size_t>(v)])]) {
        done[static_cast<std::size_t>(comp[static_cast<std::size_t>(v)])] = 1;
        others.push_back(euler_circuit(rest, v));
      }
  }

  // rotate the walk to start at order[0]
  std::vector<Vertex> w(walk.begin(), walk.end() - 1);
  auto start = std::find(w.begin(), w.end(), order.front());
  if (start == w.end()) throw PreconditionError("shortcut: walk misses " + vstr(order.front()));
  std::rotate(w.begin(), start, w.end());

  std::vector<char> in_c(static_cast<std::size_t>(n), 0), required = order_mask(order, n);
  std::vector<Vertex> cycle;
  std::size_t due = 0;
  for (Vertex v : w) {
    if (in_c[static_cast<std::size_t>(v)]) continue;
    if (required[static_cast<std::size_t>(v)]) {
      if (due >= order.size() || order[due] != v) continue;  // not its turn yet
      ++due;
    }
    in_c[static_cast<std::size_t>(v)] = 1;
    cycle.push_back(v);
  }
  if (due != order.size()) throw PreconditionError("shortcut: walk does not visit the order in sequence");

  std::vector<char> used(others.size(), 0);
  for (;;) {
    std::size_t pick = others.size();
    Vertex anchor = n;
    for (std::size_t i = 0; i < others.size(); ++i) {
      if (used[i]) continue;
      for (Vertex v : others[i])
        if (in_c[static_cast<std::size_t>(v)] && v < anchor) {
          anchor = v;
          pick = i;
        }
    }
    if (pick == others.size()) break;
    used[pick] = 1;
    std::vector<Vertex> sub(others[pick].begin(), others[pick].end() - 1);
    std::rotate(sub.begin(), std::find(sub.begin(), sub.end(), anchor), sub.end());
    std::vector<Vertex> add;
    for (Vertex v : sub)
      if (!in_c[static_cast<std::size_t>(v)]) {
        in_c[static_cast<std::size_t>(v)] = 1;
        add.push_back(v);
      }
    auto at = std::find(cycle.begin(), cycle.end(), anchor);
    cycle.insert(at + 1, add.begin(), add.end());
  }
  if (static_cast<int>(cycle.size()) != n) throw PreconditionError("shortcut: multigraph does not span all vertices");

  Tour t = Tour::from_cycle(costs, std::move(cycle));
  if (t.cost > m.cost(costs))
    throw ConsistencyError("shortcut: tour cost " + std::to_string(t.cost) + " exceeds c(M) = " +
                           std::to_string(m.cost(costs)) + "; costs are not metric");
  return t;
}

Assembly assemble(const CostMatrix& costs, const ConnectingTreeDistribution& dist, const TreeChoice& choice,
                  const OrientedMst& mst) {
  auto trees = chosen_trees(dist, choice);
  const auto stops = dist.stops();
  if (mst.root != stops.front()) throw ParameterError("assemble: MST must be rooted at the first stop");
  Assembly a;
  a.choice = choice;
  a.h0 = EdgeMultiset(dist.n);
  for (const auto* t : trees) {
    for (const auto& [u, v] : t->edges) a.h0.add(u, v);
    a.c_trees += t->cost(costs);
  }
  a.walk = ordered_walk(trees, stops);
  a.f = connect_isolated(costs, a.h0, mst);
  EdgeMultiset h = a.h0;
  h.add_all(a.f.edges);
  a.j = parity_correct(costs, h);
  a.c_j = a.j.cost(costs);
  h.add_all(a.j);
  a.tour = shortcut_to_tour(costs, h, a.walk, dist.visit_order());
  return a;
}

namespace {

// suffix[i][v] = prod_{i' >= i} (1 - coverage_{i'}(v)); tail[i] = sum_{i' >= i} E[c(T_i')].
struct Suffixes {
  std::vector<std::vector<Rational>> miss;
  std::vector<Rational> tail;
};

Suffixes suffixes(const std::vector<FamilyStats>& st, int n) {
  const std::size_t k = st.size();
  Suffixes s;
  s.miss.assign(k + 1, std::vector<Rational>(static_cast<std::size_t>(n), Rational(1)));
  s.tail.assign(k + 1, Rational(0));
  for (std::size_t i = k; i-- > 0;) {
    s.tail[i] = s.tail[i + 1] + st[i].expected;
    for (std::size_t v = 0; v < static_cast<std::size_t>(n); ++v)
      s.miss[i][v] = s.miss[i + 1][v] * (1 - st[i].coverage[v]);
  }
  return s;
}

}  // namespace

Rational conditional_g(const CostMatrix& costs, const ConnectingTreeDistribution& dist, const OrientedMst& mst,
                       const TreeChoice& choice, int fixed, const Rational& join_term) {
  const auto st = all_stats(costs, dist);
  const auto suf = suffixes(st, dist.n);
  std::vector<char> covered(static_cast<std::size_t>(dist.n), 0);
  Rational g = join_term + suf.tail[static_cast<std::size_t>(fixed)];
  for (int i = 0; i < fixed; ++i) {
    const auto& t = dist.family(i).trees.at(choice.at(static_cast<std::size_t>(i)));
    g += from_int64(t.cost(costs));
    for (Vertex v : t.vertices) covered[static_cast<std::size_t>(v)] = 1;
  }
  for (Vertex v = 0; v < dist.n; ++v)
    if (v != mst.root && !covered[static_cast<std::size_t>(v)])
      g += suf.miss[static_cast<std::size_t>(fixed)][static_cast<std::size_t>(v)] * from_int64(mst.out_edge_cost(costs, v));
  return g;
}

TreeChoice derandomized_choice(const CostMatrix& costs, const ConnectingTreeDistribution& dist,
                               const OrientedMst& mst, const Rational& join_term, std::vector<Rational>* telescope) {
  const int n = dist.n, k = dist.stroll_count();
  const auto st = all_stats(costs, dist);
  const auto suf = suffixes(st, n);
  std::vector<Rational> ev(static_cast<std::size_t>(n), Rational(0));
  for (Vertex v = 0; v < n; ++v)
    if (v != mst.root) ev[static_cast<std::size_t>(v)] = from_int64(mst.out_edge_cost(costs, v));

  std::vector<char> covered(static_cast<std::size_t>(n), 0);
  Rational fixed_cost = 0;
  auto uncovered_sum = [&](std::size_t from) {
    Rational s = 0;
    for (std::size_t v = 0; v < static_cast<std::size_t>(n); ++v)
      if (!covered[v]) s += suf.miss[from][v] * ev[v];
    return s;
  };
  Rational prev = join_term + suf.tail[0] + uncovered_sum(0);
  std::vector<Rational> seq{prev};

  TreeChoice choice;
  for (int i = 0; i < k; ++i) {
    const auto& fam = dist.family(i);
    const auto next = static_cast<std::size_t>(i + 1);
    const Rational base = join_term + fixed_cost + suf.tail[next] + uncovered_sum(next);
    std::size_t best = 0;
    Rational best_val;
    for (std::size_t j = 0; j < fam.trees.size(); ++j) {
      const auto& t = fam.trees[j];
      Rational val = base + from_int64(t.cost(costs));
      for (Vertex v : t.vertices)
        if (!covered[static_cast<std::size_t>(v)]) val -= suf.miss[next][static_cast<std::size_t>(v)] * ev[static_cast<std::size_t>(v)];
      if (j == 0 || val < best_val) {
        best = j;
        best_val = val;
      }
    }
    if (best_val > prev)
      throw ConsistencyError("conditional expectation increased at stroll " + std::to_string(i) + ": " +
                             to_fraction_string(prev) + " -> " + to_fraction_string(best_val));
    const auto& t = fam.trees[best];
    fixed_cost += from_int64(t.cost(costs));
    for (Vertex v : t.vertices) covered[static_cast<std::size_t>(v)] = 1;
    choice.push_back(best);
    prev = best_val;
    seq.push_back(prev);
  }
  if (telescope) *telescope = std::move(seq);
  return choice;
}

std::string Certificate::ratio_vs_lp() const {
  if (sgn(c_lp) == 0) return cost == 0 ? decimal_upper(Rational(1), 10) : "inf";
  return decimal_upper(from_int64(cost) / c_lp, 10);
}

std::string Certificate::to_json() const {
  nlohmann::ordered_json j;
  j["c_lp"] = to_fraction_string(c_lp);
  j["cost"] = cost;
  const auto ratio = ratio_vs_lp();
  if (ratio == "inf")
    j["ratio_vs_lp"] = nullptr;
  else
    j["ratio_vs_lp"] = nlohmann::ordered_json::parse(ratio);
  j["c_trees"] = c_trees;
  j["c_F"] = c_f;
  j["c_J"] = c_j;
  if (seed)
    j["seed"] = *seed;
  else
    j["seed"] = nullptr;
  j["c_mst"] = c_mst;
  j["ev_bound"] = ev_bound;
  if (!telescope.empty()) j["g"] = to_fraction_string(g);
  return j.dump();
}

PreparedInstance prepare(const Instance& inst, const AssemblyOptions& opts) {
  PreparedInstance p;
  RelaxationOptions ro;
  ro.exec = opts.exec;
  p.lp = solve_relaxation(inst, ro);
  p.dist = build_distribution(inst, p.lp, opts.decomposition, opts.exec);
  p.mst = minimum_spanning_tree(inst.costs(), inst.d(0));
  return p;
}

namespace {

OtspRun finish(const Instance& inst, const PreparedInstance& prep, Assembly a) {
  OtspRun run;
  auto& c = run.certificate;
  c.c_lp = prep.lp.objective;
  c.cost = a.tour.cost;
  c.c_trees = a.c_trees;
  c.c_f = a.f.cost;
  c.c_j = a.c_j;
  c.c_mst = prep.mst.cost;
  c.ev_bound = a.f.ev_bound;
  if (auto why = check_tour(inst, a.tour); !why.empty()) throw ConsistencyError("assembled tour: " + why);
  if (c.cost > c.c_trees + c.c_f + c.c_j) throw ConsistencyError("tour cost exceeds c(H_0) + c(F) + c(J)");
  if (from_int64(c.c_mst) > c.c_lp) throw ConsistencyError("c(MST) exceeds c_LP");
  if (from_int64(2 * c.c_j) > c.c_lp) throw ConsistencyError("c(J) exceeds c_LP / 2");
  run.assembly = std::move(a);
  return run;
}

}  // namespace

OtspRun run_randomized(const Instance& inst, const PreparedInstance& prep, std::uint64_t seed) {
  auto a = assemble(inst.costs(), prep.dist, sample_trees(prep.dist, seed), prep.mst);
  auto run = finish(inst, prep, std::move(a));
  run.certificate.seed = seed;
  return run;
}

OtspRun run_derandomized(const Instance& inst, const PreparedInstance& prep) {
  const Rational join = prep.lp.objective / 2;
  std::vector<Rational> tele;
  auto choice = derandomized_choice(inst.costs(), prep.dist, prep.mst, join, &tele);
  auto run = finish(inst, prep, assemble(inst.costs(), prep.dist, choice, prep.mst));
  auto& c = run.certificate;
  c.g = tele.back();
  c.telescope = std::move(tele);
  if (from_int64(c.cost) > c.g) throw ConsistencyError("tour cost exceeds the final g value");
  if (c.g > guarantee_constant() * c.c_lp)
    throw ConsistencyError("g = " + to_fraction_string(c.g) + " exceeds 1.86787944118 * c_LP");
  return run;
}

OtspRun solve_randomized(const Instance& inst, std::uint64_t seed, const AssemblyOptions& opts) {
  return run_randomized(inst, prepare(inst, opts), seed);
}

OtspRun solve_derandomized(const Instance& inst, const AssemblyOptions& opts) {
  return run_derandomized(inst, prepare(inst, opts));
}

IsolationBound isolation_bound(const ConnectingTreeDistribution& dist) {
  std::vector<char> ordered(static_cast<std::size_t>(dist.n), 0);
  for (const auto& g : dist.groups)
    for (Vertex d : g.order) ordered[static_cast<std::size_t>(d)] = 1;
  std::vector<Rational> prod(static_cast<std::size_t>(dist.n), Rational(1));
  for (int i = 0; i < dist.stroll_count(); ++i) {
    const auto& fam = dist.family(i);
    for (Vertex v = 0; v < dist.n; ++v)
      if (!ordered[static_cast<std::size_t>(v)]) prod[static_cast<std::size_t>(v)] *= 1 - fam.coverage(v);
  }
  IsolationBound b;
  b.worst = 0;
  for (Vertex v = 0; v < dist.n; ++v)
    if (!ordered[static_cast<std::size_t>(v)] && (b.vertex < 0 || prod[static_cast<std::size_t>(v)] > b.worst)) {
      b.worst = prod[static_cast<std::size_t>(v)];
      b.vertex = v;
    }
  b.ok = b.worst <= inv_e_power_lower(static_cast<int>(dist.groups.size()));
  return b;
}

}  // namespace otsp
