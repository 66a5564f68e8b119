#include "otsp/decomposition.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <set>
#include <tuple>
#include <sstream>

#include <json.hpp>

#include "otsp/error.hpp"
#include "otsp/lp/exact.hpp"
#include "otsp/maxflow.hpp"
#include "otsp/rng.hpp"

namespace otsp {

namespace {

using I128 = __int128;

std::string edge_str(const Edge& e) {
  return "{" + std::to_string(e.first) + "," + std::to_string(e.second) + "}";
}

mpz_class pow2(unsigned e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

I128 to_i128(const mpz_class& v) {
  // v is known to be in [0, 2^100)
  mpz_class hi = v >> 64;
  mpz_class lo = v - (hi << 64);
  return (static_cast<I128>(mpz_get_ui(hi.get_mpz_t())) << 64) | static_cast<I128>(mpz_get_ui(lo.get_mpz_t()));
}

mpz_class from_i128(I128 v) {
  mpz_class hi = static_cast<unsigned long>(static_cast<unsigned __int128>(v) >> 64);
  mpz_class lo = static_cast<unsigned long>(static_cast<unsigned __int128>(v) & ~0UL);
  return (hi << 64) + lo;
}

WeightedTree make_tree(std::vector<Edge> edges, Rational mu) {
  WeightedTree t;
  std::sort(edges.begin(), edges.end());
  std::set<Vertex> vs;
  for (auto [u, v] : edges) {
    vs.insert(u);
    vs.insert(v);
  }
  t.edges = std::move(edges);
  t.vertices.assign(vs.begin(), vs.end());
  t.mu = std::move(mu);
  return t;
}

WeightedTreeFamily merge_family(Vertex s, Vertex t, const std::map<std::vector<Edge>, Rational>& trees) {
  WeightedTreeFamily fam;
  fam.s = s;
  fam.t = t;
  for (const auto& [edges, mu] : trees) fam.trees.push_back(make_tree(edges, mu));
  return fam;
}

// Packs s-rooted arborescences into an integral digraph Z with in-degrees rho(v),
// K = rho(t) the number still to pack. Each round searches for an arborescence B
// through every vertex with rho(v) = K such that removing one copy keeps
// lambda(s, v) >= rho(v) for all v, then removes the largest feasible multiple.
// The cut condition does not guarantee the rest stays packable, so a round can
// dead-end; the caller restarts with different tie-breaking.
class ArborescencePacker {
 public:
  ArborescencePacker(int m, std::vector<I128> z, I128 total) : m_(m), z_(std::move(z)), k_(total) {
    rho_.assign(static_cast<std::size_t>(m_), 0);
    for (int a = 0; a < m_; ++a)
      for (int b = 0; b < m_; ++b) rho_[b] += arc(a, b);
  }

  const std::vector<I128>& rho() const { return rho_; }
  I128 remaining() const { return k_; }
  long flow_calls() const { return flows_; }
  void set_search_budget(long b) { search_budget_ = b; }
  void set_rng(Rng* rng) { rng_ = rng; }

  // Returns the parent array of the next arborescence (root 0) and its multiplicity.
  std::pair<std::vector<int>, I128> next() {
    Search st;
    st.parent.assign(static_cast<std::size_t>(m_), -1);
    st.in.assign(static_cast<std::size_t>(m_), 0);
    st.target.assign(static_cast<std::size_t>(m_), 0);
    st.in[0] = 1;
    for (int v = 1; v < m_; ++v) st.target[v] = rho_[v] == k_;
    st.budget = search_budget_;
    if (!grow(st))
      throw ResourceError(st.budget > 0 ? "tree decomposition: no admissible arborescence found"
                                        : "tree decomposition: arborescence search budget exhausted");
    const std::vector<int>& parent = st.parent;
    const std::vector<char>& in = st.in;

    // Largest integral step: arc capacities, the K-bound for vertices outside, then cuts.
    I128 eps = k_;
    for (int b = 1; b < m_; ++b) {
      if (parent[b] >= 0) eps = std::min(eps, arc(parent[b], b));
      else eps = std::min(eps, k_ - rho_[b]);
    }
    for (;;) {
      auto cut = violation(parent, in, eps);
      if (!cut) break;
      const auto& [v, sink] = *cut;
      I128 zin = 0, d = 0;
      for (int a = 0; a < m_; ++a) {
        if (sink[a]) continue;
        for (int b = 0; b < m_; ++b)
          if (sink[b]) {
            zin += arc(a, b);
            if (parent[b] == a) ++d;
          }
      }
      I128 denom = d - (in[v] ? 1 : 0);
      if (denom <= 0) throw ConsistencyError("tree decomposition: cut without tree arcs violated");
      I128 next_eps = (zin - rho_[v]) / denom;
      if (next_eps >= eps || next_eps < 1)
        throw ConsistencyError("tree decomposition: step search failed to make progress");
      eps = next_eps;
    }

    for (int b = 1; b < m_; ++b)
      if (parent[b] >= 0) {
        arc(parent[b], b) -= eps;
        rho_[b] -= eps;
      }
    k_ -= eps;
    return {parent, eps};
  }

 private:
  struct Search {
    std::vector<int> parent;
    std::vector<char> in, target;
    std::set<std::vector<int>> seen;  // partial trees already explored
    long budget = 0;
  };

  // Depth-first growth of an arborescence from the root. Growth is tested
  // optimistically (every vertex may still join, so each one is charged the reduced
  // requirement). Once all targets are in, the exact test decides; a vertex it flags
  // becomes a target. Dead ends backtrack.
  bool grow(Search& st) {
    auto& parent = st.parent;
    auto& in = st.in;
    auto& target = st.target;
    std::vector<int> promoted;
    auto undo = [&] {
      for (int v : promoted) target[v] = 0;
      return false;
    };
    for (;;) {
      bool missing = false;
      for (int v = 1; v < m_; ++v) missing |= target[v] && !in[v];
      if (missing) break;
      if (--st.budget < 0) return undo();
      auto cut = violation(parent, in, 1);
      if (!cut) return true;
      if (in[cut->first]) return undo();
      target[cut->first] = 1;
      promoted.push_back(cut->first);
    }
    std::vector<int> key = parent;
    for (int v = 0; v < m_; ++v) key.push_back(target[v]);
    if (!st.seen.insert(std::move(key)).second) return undo();

    // Vertices that can still lead to a missing target.
    std::vector<char> leads(static_cast<std::size_t>(m_), 0);
    std::vector<int> stack;
    for (int v = 1; v < m_; ++v)
      if (target[v] && !in[v]) {
        leads[v] = 1;
        stack.push_back(v);
      }
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int u = 1; u < m_; ++u)
        if (!leads[u] && !in[u] && arc(u, v) > 0) {
          leads[u] = 1;
          stack.push_back(u);
        }
    }
    // Arcs into targets first, then into vertices leading to one; larger capacity first.
    // Later attempts replace the capacity key by a random one.
    std::vector<std::tuple<int, I128, int, int>> cand;
    for (int b = 1; b < m_; ++b) {
      if (in[b] || !leads[b]) continue;
      for (int a = 0; a < m_; ++a)
        if (in[a] && arc(a, b) > 0)
          cand.emplace_back(target[b] ? 0 : 1, rng_ ? -static_cast<I128>(rng_->below(1u << 30)) : -arc(a, b), b, a);
    }
    std::sort(cand.begin(), cand.end());
    const std::vector<char> all(static_cast<std::size_t>(m_), 1);
    for (const auto& [grp, negcap, b, a] : cand) {
      if (--st.budget < 0) return undo();
      parent[b] = a;
      in[b] = 1;
      if (!violation(parent, all, 1) && grow(st)) return true;
      parent[b] = -1;
      in[b] = 0;
    }
    return undo();
  }

  I128& arc(int a, int b) { return z_[static_cast<std::size_t>(a) * m_ + b]; }
  I128 arc(int a, int b) const { return z_[static_cast<std::size_t>(a) * m_ + b]; }

  // First vertex v whose requirement lambda(s, v) >= rho(v) - eps [v counted] fails once
  // eps is subtracted along the tree, with the sink side of a minimum cut.
  std::optional<std::pair<int, std::vector<char>>> violation(const std::vector<int>& parent,
                                                             const std::vector<char>& counted, I128 eps) {
    for (int v = 1; v < m_; ++v) {
      I128 req = rho_[v] - (counted[v] ? eps : 0);
      if (req <= 0) continue;
      DenseMaxFlow<I128> flow(m_);
      for (int a = 0; a < m_; ++a)
        for (int b = 0; b < m_; ++b) {
          I128 c = arc(a, b) - (parent[b] == a ? eps : 0);
          if (c > 0) flow.add_capacity(a, b, c);
        }
      ++flows_;
      if (flow.run(0, v, &req) < req) {
        auto src = flow.source_side(0);
        std::vector<char> sink(static_cast<std::size_t>(m_));
        for (int u = 0; u < m_; ++u) sink[u] = !src[u];
        return std::make_pair(v, std::move(sink));
      }
    }
    return std::nullopt;
  }

  int m_;
  std::vector<I128> z_;
  I128 k_;
  std::vector<I128> rho_;
  long flows_ = 0;
  long search_budget_ = 20000;
  Rng* rng_ = nullptr;
};

}  // namespace

bool WeightedTree::contains(Vertex v) const { return std::binary_search(vertices.begin(), vertices.end(), v); }

Cost WeightedTree::cost(const CostMatrix& c) const {
  Cost s = 0;
  for (auto [u, v] : edges) s += c(u, v);
  return s;
}

Rational WeightedTreeFamily::expected_cost(const CostMatrix& c) const {
  Rational s = 0;
  for (const auto& t : trees) s += t.mu * from_int64(t.cost(c));
  return s;
}

Rational WeightedTreeFamily::coverage(Vertex v) const {
  Rational s = 0;
  for (const auto& t : trees)
    if (t.contains(v)) s += t.mu;
  return s;
}

DecompositionOptions::DecompositionOptions() : scale_cap(pow2(64)) {}

DecompositionOptions DecompositionOptions::from_environment() {
  DecompositionOptions o;
  if (const char* env = std::getenv("OTSP_SCALE_CAP"); env && *env) {
    mpz_class cap;
    if (cap.set_str(env, 10) != 0 || cap < 1)
      throw ParameterError(std::string("OTSP_SCALE_CAP: not a positive integer: ") + env);
    o.scale_cap = cap;
  }
  return o;
}

ClosedStrollPoint close_stroll(const StrollPoint& point) {
  if (auto why = check_stroll_feasible(point); !why.empty())
    throw PreconditionError("stroll " + std::to_string(point.index) + " is not in the stroll polytope: " + why);
  ClosedStrollPoint c;
  c.root = point.s;
  c.anchor = point.t;
  c.x = point.x;
  c.x[make_edge(point.s, point.t)] += 1;
  c.y = point.y;
  c.y[point.s] += Rational(1, 2);
  c.y[point.t] += Rational(1, 2);

  const int n = point.n();
  if (c.y[c.root] != 1 || c.y[c.anchor] != 1 || c.x[make_edge(c.root, c.anchor)] < 1)
    throw ConsistencyError("closed point: root or anchor values are off");
  std::vector<Rational> deg(static_cast<std::size_t>(n));
  for (const auto& [e, v] : c.x) {
    deg[e.first] += v;
    deg[e.second] += v;
  }
  for (int v = 0; v < n; ++v)
    if (deg[v] != 2 * c.y[v]) throw ConsistencyError("closed point: degree identity fails at " + std::to_string(v));
  // x'(delta(S)) >= 2 y'_v for every S avoiding the root: one min cut per vertex.
  for (int v = 0; v < n; ++v) {
    if (v == c.root || sgn(c.y[v]) == 0) continue;
    DenseMaxFlow<Rational> flow(n);
    for (const auto& [e, val] : c.x) flow.add_undirected(e.first, e.second, val);
    Rational need = 2 * c.y[v];
    if (flow.run(c.root, v, &need) < need)
      throw ConsistencyError("closed point: cut condition fails for vertex " + std::to_string(v));
  }
  return c;
}

WeightedTreeFamily decompose(const StrollPoint& point) {
  return decompose(point, DecompositionOptions::from_environment());
}

WeightedTreeFamily decompose(const StrollPoint& point, const DecompositionOptions& opts, DecompositionStats* stats) {
  ClosedStrollPoint closed = close_stroll(point);

  // Local indices: the root first, then every other vertex of the support.
  std::vector<Vertex> verts{point.s};
  for (Vertex v = 0; v < point.n(); ++v)
    if (v != point.s && (sgn(point.y[v]) > 0 || v == point.t)) verts.push_back(v);
  const int m = static_cast<int>(verts.size());
  std::vector<int> local(static_cast<std::size_t>(point.n()), -1);
  for (int i = 0; i < m; ++i) local[verts[i]] = i;
  const int lt = local[point.t];

  // Orientation z of x with in(s) = 0, in(t) = 1 and in = out = y_v elsewhere:
  // route 1/2 from s to t with capacity x_e / 2 each way; z_ab = x_ab - residual(a, b).
  DenseMaxFlow<Rational> orient(m);
  for (const auto& [e, val] : point.x) {
    if (local[e.first] < 0 || local[e.second] < 0)
      throw ConsistencyError("decompose: support edge " + edge_str(e) + " touches a zero-coverage vertex");
    orient.add_undirected(local[e.first], local[e.second], val / 2);
  }
  const Rational half(1, 2);
  if (orient.run(0, lt, &half) != half) throw ConsistencyError("decompose: orientation flow below 1/2");
  std::vector<Rational> z(static_cast<std::size_t>(m) * m);
  for (const auto& [e, val] : point.x) {
    int a = local[e.first], b = local[e.second];
    z[static_cast<std::size_t>(a) * m + b] = val - orient.residual(a, b);
    z[static_cast<std::size_t>(b) * m + a] = val - orient.residual(b, a);
  }

  // M is the lcm over the closed point; the orientation may need one more factor 2.
  mpz_class scale = 1;
  auto absorb = [](mpz_class& into, const Rational& q) {
    mpz_lcm(into.get_mpz_t(), into.get_mpz_t(), q.get_den_mpz_t());
  };
  for (const auto& [e, v] : closed.x) absorb(scale, v);
  for (const auto& v : closed.y) absorb(scale, v);
  if (scale > opts.scale_cap)
    throw ResourceError("decompose: scale " + scale.get_str() + " for stroll " + std::to_string(point.index) +
                        " exceeds the cap " + opts.scale_cap.get_str() + " (raise OTSP_SCALE_CAP)");
  // A unit step then only meets cuts that are tight at the fractional point.
  mpz_class unit = scale;
  for (const auto& v : z) absorb(unit, v);
  unit *= m;
  if (unit >= pow2(100)) throw ResourceError("decompose: scale " + unit.get_str() + " exceeds 2^100");

  std::vector<I128> zi(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    Rational scaled = z[i] * unit;
    zi[i] = to_i128(scaled.get_num());
  }
  // The greedy packing can paint itself into a corner; retry with other tie-breaking.
  std::map<std::vector<Edge>, Rational> trees;
  long flow_calls = 0;
  std::string last_error;
  int attempt = 0;
  for (; attempt < opts.attempts; ++attempt) {
    Rng rng(substream_seed(0x5eed, static_cast<std::uint64_t>(attempt)));
    ArborescencePacker packer(m, zi, to_i128(unit));
    if (attempt > 0) packer.set_rng(&rng);
    for (int v = 1; v < m; ++v) {
      Rational want = v == lt ? Rational(1) : point.y[verts[v]];
      if (from_i128(packer.rho()[v]) != want * unit)
        throw ConsistencyError("decompose: orientation in-degree differs from coverage at " +
                               std::to_string(verts[v]));
    }
    trees.clear();
    try {
      long rounds = 0;
      while (packer.remaining() > 0) {
        if (++rounds > opts.max_trees)
          throw ResourceError("decompose: more than " + std::to_string(opts.max_trees) + " trees for stroll " +
                              std::to_string(point.index));
        auto [parent, eps] = packer.next();
        std::vector<Edge> edges;
        for (int b = 1; b < m; ++b)
          if (parent[b] >= 0) edges.push_back(make_edge(verts[parent[b]], verts[b]));
        std::sort(edges.begin(), edges.end());
        trees[edges] += Rational(from_i128(eps)) / Rational(unit);
      }
      flow_calls += packer.flow_calls();
      break;
    } catch (const ResourceError& e) {
      flow_calls += packer.flow_calls();
      last_error = e.what();
    }
  }
  if (attempt == opts.attempts) {
    int support = static_cast<int>(point.x.size());
    if (support <= 16) {
      if (stats) {
        stats->scale = scale;
        stats->flow_calls = flow_calls;
        stats->attempts = attempt;
        stats->fallback = true;
      }
      auto fam = decompose_bruteforce(point);
      if (stats) stats->trees = static_cast<long>(fam.trees.size());
      return fam;
    }
    throw ResourceError("decompose: stroll " + std::to_string(point.index) + " not decomposed after " +
                        std::to_string(opts.attempts) + " attempts (" + last_error + ")");
  }

  if (stats) {
    stats->scale = scale;
    stats->trees = static_cast<long>(trees.size());
    stats->flow_calls = flow_calls;
    stats->attempts = attempt + 1;
  }
  return merge_family(point.s, point.t, trees);
}

WeightedTreeFamily decompose_bruteforce(const StrollPoint& point) {
  if (auto why = check_stroll_feasible(point); !why.empty())
    throw PreconditionError("stroll " + std::to_string(point.index) + " is not in the stroll polytope: " + why);
  std::vector<Edge> support;
  std::vector<Rational> xval;
  for (const auto& [e, v] : point.x)
    if (sgn(v) > 0) {
      support.push_back(e);
      xval.push_back(v);
    }
  const int ne = static_cast<int>(support.size());
  if (ne > 16)
    throw ResourceError("brute-force decomposition: support has " + std::to_string(ne) + " edges (limit 16)");

  const int n = point.n();
  std::vector<std::uint32_t> masks;
  std::vector<int> comp(static_cast<std::size_t>(n));
  for (std::uint32_t mask = 1; mask < (1u << ne); ++mask) {
    std::iota(comp.begin(), comp.end(), 0);
    auto find = [&](int v) {
      while (comp[v] != v) v = comp[v] = comp[comp[v]];
      return v;
    };
    std::set<Vertex> vs;
    bool acyclic = true;
    for (int i = 0; i < ne && acyclic; ++i) {
      if (!(mask >> i & 1)) continue;
      auto [u, v] = support[i];
      vs.insert(u);
      vs.insert(v);
      int ru = find(u), rv = find(v);
      if (ru == rv) acyclic = false;
      else comp[ru] = rv;
    }
    if (!acyclic || !vs.count(point.s) || !vs.count(point.t)) continue;
    if (static_cast<int>(vs.size()) != std::popcount(mask) + 1) continue;  // a forest, not a tree
    masks.push_back(mask);
  }

  // Rows: one per support edge, one per interior covered vertex, and sum mu = 1.
  std::vector<Vertex> covered;
  for (Vertex v = 0; v < n; ++v)
    if (v != point.s && v != point.t && sgn(point.y[v]) > 0) covered.push_back(v);
  const int nrows = ne + static_cast<int>(covered.size()) + 1;
  std::vector<lp::RationalRow> rows(static_cast<std::size_t>(nrows));
  std::vector<Rational> b(static_cast<std::size_t>(nrows));
  for (int i = 0; i < ne; ++i) b[i] = xval[i];
  for (std::size_t j = 0; j < covered.size(); ++j) b[ne + j] = point.y[covered[j]];
  b[nrows - 1] = 1;
  for (int c = 0; c < static_cast<int>(masks.size()); ++c) {
    std::set<Vertex> vs;
    for (int i = 0; i < ne; ++i)
      if (masks[c] >> i & 1) {
        rows[i].push_back({c, Rational(1)});
        vs.insert(support[i].first);
        vs.insert(support[i].second);
      }
    for (std::size_t j = 0; j < covered.size(); ++j)
      if (vs.count(covered[j])) rows[ne + j].push_back({c, Rational(1)});
    rows[nrows - 1].push_back({c, Rational(1)});
  }
  std::vector<Rational> cost(masks.size(), Rational(0));
  auto res = lp::solve_exact_lp(cost, rows, b);
  if (res.status != lp::ExactLpResult::Status::Optimal)
    throw ConsistencyError("brute-force decomposition: no tree family matches stroll " +
                           std::to_string(point.index));
  std::map<std::vector<Edge>, Rational> trees;
  for (std::size_t c = 0; c < masks.size(); ++c) {
    if (sgn(res.x[c]) == 0) continue;
    std::vector<Edge> edges;
    for (int i = 0; i < ne; ++i)
      if (masks[c] >> i & 1) edges.push_back(support[i]);
    trees[edges] += res.x[c];
  }
  return merge_family(point.s, point.t, trees);
}

DecompositionReport verify_decomposition(const StrollPoint& point, const WeightedTreeFamily& fam) {
  DecompositionReport rep;
  auto fail = [&](std::string msg) {
    rep.ok = false;
    rep.violations.push_back(std::move(msg));
  };
  if (fam.s != point.s || fam.t != point.t) fail("endpoints differ from the stroll");
  const int n = point.n();
  Rational total = 0;
  std::map<Edge, Rational> load;
  std::vector<Rational> cover(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < fam.trees.size(); ++i) {
    const auto& t = fam.trees[i];
    const std::string tag = "tree " + std::to_string(i) + ": ";
    if (sgn(t.mu) <= 0) fail(tag + "non-positive weight " + to_fraction_string(t.mu));
    total += t.mu;
    std::set<Vertex> vs;
    std::vector<int> comp(static_cast<std::size_t>(n));
    std::iota(comp.begin(), comp.end(), 0);
    auto find = [&](int v) {
      while (comp[v] != v) v = comp[v] = comp[comp[v]];
      return v;
    };
    bool ok = true;
    for (auto [u, v] : t.edges) {
      if (u < 0 || v >= n || u >= v) {
        fail(tag + "bad edge " + edge_str({u, v}));
        ok = false;
        continue;
      }
      vs.insert(u);
      vs.insert(v);
      int ru = find(u), rv = find(v);
      if (ru == rv) ok = false;
      else comp[ru] = rv;
      load[{u, v}] += t.mu;
    }
    if (!ok || vs.size() != t.edges.size() + 1) fail(tag + "edges do not form a tree");
    if (!vs.count(point.s) || !vs.count(point.t)) fail(tag + "does not contain both s and t");
    if (std::vector<Vertex>(vs.begin(), vs.end()) != t.vertices) fail(tag + "vertex list differs from its edges");
    for (Vertex v : vs) cover[v] += t.mu;
  }
  if (total != 1) fail("weights sum to " + to_fraction_string(total) + ", not 1");
  std::set<Edge> all;
  for (const auto& [e, v] : point.x)
    if (sgn(v) != 0) all.insert(e);
  for (const auto& [e, v] : load) all.insert(e);
  for (const Edge& e : all) {
    Rational want = point.x_at(e.first, e.second);
    Rational got = load.count(e) ? load[e] : Rational(0);
    if (want != got)
      fail("edge identity at " + edge_str(e) + ": trees give " + to_fraction_string(got) + ", x is " +
           to_fraction_string(want));
  }
  for (Vertex v = 0; v < n; ++v) {
    if (v == point.s || v == point.t) continue;
    if (cover[v] != point.y[v])
      fail("coverage at " + std::to_string(v) + ": trees give " + to_fraction_string(cover[v]) + ", y is " +
           to_fraction_string(point.y[v]));
  }
  return rep;
}

std::string family_to_json(const WeightedTreeFamily& fam) {
  nlohmann::ordered_json j;
  j["s"] = fam.s;
  j["t"] = fam.t;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& t : fam.trees) {
    nlohmann::ordered_json o;
    o["mu"] = to_fraction_string(t.mu);
    auto es = nlohmann::ordered_json::array();
    for (auto [u, v] : t.edges) es.push_back({u, v});
    o["edges"] = es;
    arr.push_back(o);
  }
  j["trees"] = arr;
  return j.dump(1);
}

WeightedTreeFamily family_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("tree family: ") + e.what());
  }
  try {
    WeightedTreeFamily fam;
    fam.s = j.at("s").get<int>();
    fam.t = j.at("t").get<int>();
    const auto& trees = j.at("trees");
    for (std::size_t i = 0; i < trees.size(); ++i) {
      std::vector<Edge> edges;
      for (const auto& e : trees[i].at("edges")) {
        if (!e.is_array() || e.size() != 2)
          throw ParseError("tree family: trees[" + std::to_string(i) + "]: edge must be a pair");
        int u = e[0].get<int>(), v = e[1].get<int>();
        if (u == v) throw ParseError("tree family: trees[" + std::to_string(i) + "]: self-loop");
        edges.push_back(make_edge(u, v));
      }
      fam.trees.push_back(make_tree(std::move(edges), parse_fraction(trees[i].at("mu").get<std::string>())));
    }
    return fam;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("tree family: ") + e.what());
  }
}

}  // namespace otsp
