#include "otsp/spanning.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "blossom.hpp"
#include "otsp/error.hpp"

namespace otsp {

void EdgeMultiset::add(Vertex u, Vertex v, int count) {
  if (u == v) throw ParameterError("self-loop on vertex " + std::to_string(u));
  if (count <= 0) return;
  mult_[make_edge(u, v)] += count;
  degree_[u] += count;
  degree_[v] += count;
  total_ += static_cast<std::size_t>(count);
}

void EdgeMultiset::add_all(const EdgeMultiset& other) {
  for (const auto& [e, m] : other.mult_) add(e.first, e.second, m);
}

void EdgeMultiset::remove(Vertex u, Vertex v, int count) {
  auto it = mult_.find(make_edge(u, v));
  if (it == mult_.end() || it->second < count)
    throw PreconditionError("edge {" + std::to_string(u) + "," + std::to_string(v) + "} not in multiset");
  it->second -= count;
  if (it->second == 0) mult_.erase(it);
  degree_[u] -= count;
  degree_[v] -= count;
  total_ -= static_cast<std::size_t>(count);
}

int EdgeMultiset::multiplicity(Vertex u, Vertex v) const {
  auto it = mult_.find(make_edge(u, v));
  return it == mult_.end() ? 0 : it->second;
}

std::vector<Vertex> EdgeMultiset::odd_vertices() const {
  std::vector<Vertex> out;
  for (int v = 0; v < n_; ++v)
    if (degree_[v] % 2) out.push_back(v);
  return out;
}

Cost EdgeMultiset::cost(const CostMatrix& c) const {
  Cost total = 0;
  for (const auto& [e, m] : mult_) total += c(e.first, e.second) * m;
  return total;
}

std::vector<int> EdgeMultiset::components() const {
  std::vector<int> parent(static_cast<std::size_t>(n_));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [e, m] : mult_) parent[find(e.first)] = find(e.second);
  // relabel by smallest member
  std::vector<int> label(static_cast<std::size_t>(n_), -1), comp(static_cast<std::size_t>(n_));
  int next = 0;
  for (int v = 0; v < n_; ++v) {
    int r = find(v);
    if (label[r] < 0) label[r] = next++;
    comp[v] = label[r];
  }
  return comp;
}

bool EdgeMultiset::is_connected() const {
  auto c = components();
  return std::all_of(c.begin(), c.end(), [](int x) { return x == 0; });
}

bool EdgeMultiset::is_eulerian() const {
  for (int d : degree_)
    if (d % 2) return false;
  return is_connected();
}

std::vector<Vertex> euler_circuit(const EdgeMultiset& m, Vertex start) {
  const int n = m.vertex_count();
  std::vector<std::map<Vertex, int>> adj(static_cast<std::size_t>(n));
  for (const auto& [e, c] : m.entries()) {
    adj[e.first][e.second] += c;
    adj[e.second][e.first] += c;
  }
  for (int v = 0; v < n; ++v)
    if (m.degree(v) % 2) throw PreconditionError("odd degree at vertex " + std::to_string(v));
  std::vector<Vertex> stack{start}, circuit;
  while (!stack.empty()) {
    Vertex v = stack.back();
    if (adj[v].empty()) {
      circuit.push_back(v);
      stack.pop_back();
      continue;
    }
    auto it = adj[v].begin();
    Vertex u = it->first;
    if (--it->second == 0) adj[v].erase(it);
    auto jt = adj[u].find(v);
    if (--jt->second == 0) adj[u].erase(jt);
    stack.push_back(u);
  }
  std::reverse(circuit.begin(), circuit.end());
  return circuit;
}

EdgeMultiset OrientedMst::as_multiset() const {
  EdgeMultiset m(static_cast<int>(parent.size()));
  for (const auto& e : edges) m.add(e.first, e.second);
  return m;
}

OrientedMst minimum_spanning_tree(const CostMatrix& costs, Vertex root) {
  const int n = costs.size();
  if (root < 0 || root >= n) throw ParameterError("MST root out of range");
  struct Cand {
    Cost c;
    Vertex u, v;
  };
  std::vector<Cand> cand;
  cand.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) cand.push_back({costs(u, v), u, v});
  std::sort(cand.begin(), cand.end(), [](const Cand& a, const Cand& b) {
    return std::tie(a.c, a.u, a.v) < std::tie(b.c, b.u, b.v);
  });
  std::vector<int> uf(static_cast<std::size_t>(n));
  std::iota(uf.begin(), uf.end(), 0);
  auto find = [&](int x) {
    while (uf[x] != x) x = uf[x] = uf[uf[x]];
    return x;
  };
  OrientedMst t;
  t.root = root;
  std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(n));
  for (const auto& c : cand) {
    int a = find(c.u), b = find(c.v);
    if (a == b) continue;
    uf[a] = b;
    t.edges.push_back({c.u, c.v});
    t.cost += c.c;
    adj[c.u].push_back(c.v);
    adj[c.v].push_back(c.u);
    if (static_cast<int>(t.edges.size()) == n - 1) break;
  }
  t.parent.assign(static_cast<std::size_t>(n), -1);
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<Vertex> stack{root};
  seen[root] = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (Vertex u : adj[v])
      if (!seen[u]) {
        seen[u] = 1;
        t.parent[u] = v;
        stack.push_back(u);
      }
  }
  return t;
}

namespace {

void require_even(const std::vector<Vertex>& vs) {
  if (vs.size() % 2) throw ParameterError("perfect matching / Q-join needs an even vertex set, got " +
                                          std::to_string(vs.size()));
}

Matching finish(const CostMatrix& costs, std::vector<Edge> pairs) {
  Matching m;
  std::sort(pairs.begin(), pairs.end());
  for (const auto& e : pairs) m.cost += costs(e.first, e.second);
  m.pairs = std::move(pairs);
  return m;
}

}  // namespace

Matching min_cost_perfect_matching_dp(const CostMatrix& costs, const std::vector<Vertex>& vs) {
  require_even(vs);
  const int q = static_cast<int>(vs.size());
  if (q > 22) throw ResourceError("subset-DP matching supports at most 22 vertices");
  if (q == 0) return {};
  const std::size_t full = (std::size_t{1} << q) - 1;
  constexpr Cost inf = std::numeric_limits<Cost>::max() / 4;
  std::vector<Cost> best(full + 1, inf);
  std::vector<std::uint8_t> pick_i(full + 1, 0), pick_j(full + 1, 0);
  best[0] = 0;
  // Always match the lowest unmatched index next.
  for (std::size_t mask = 0; mask < full; ++mask) {
    if (best[mask] >= inf) continue;
    int i = 0;
    while (mask >> i & 1) ++i;
    for (int j = i + 1; j < q; ++j) {
      if (mask >> j & 1) continue;
      std::size_t next = mask | (std::size_t{1} << i) | (std::size_t{1} << j);
      Cost c = best[mask] + costs(vs[i], vs[j]);
      if (c < best[next]) {
        best[next] = c;
        pick_i[next] = static_cast<std::uint8_t>(i);
        pick_j[next] = static_cast<std::uint8_t>(j);
      }
    }
  }
  std::vector<Edge> pairs;
  for (std::size_t mask = full; mask;) {
    int i = pick_i[mask], j = pick_j[mask];
    pairs.push_back(make_edge(vs[i], vs[j]));
    mask &= ~((std::size_t{1} << i) | (std::size_t{1} << j));
  }
  return finish(costs, std::move(pairs));
}

Matching min_cost_perfect_matching_blossom(const CostMatrix& costs, const std::vector<Vertex>& vs) {
  require_even(vs);
  const int q = static_cast<int>(vs.size());
  if (q == 0) return {};
  Cost maxc = 0;
  for (int a = 0; a < q; ++a)
    for (int b = a + 1; b < q; ++b) maxc = std::max(maxc, costs(vs[a], vs[b]));
  // Any perfect matching outweighs every non-perfect one once big > (q/2) * maxc.
  const std::int64_t big = static_cast<std::int64_t>(q / 2 + 1) * maxc + 1;
  std::vector<std::int64_t> w(static_cast<std::size_t>(q) * q, 0);
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b)
      if (a != b) w[static_cast<std::size_t>(a) * q + b] = 2 * (big - costs(vs[a], vs[b]));
  auto mate = detail::max_weight_matching(q, w);
  std::vector<Edge> pairs;
  for (int a = 0; a < q; ++a) {
    if (mate[a] < 0 || mate[mate[a]] != a)
      throw ConsistencyError("blossom matching is not perfect");
    if (a < mate[a]) pairs.push_back(make_edge(vs[a], vs[mate[a]]));
  }
  return finish(costs, std::move(pairs));
}

Matching min_cost_perfect_matching(const CostMatrix& costs, const std::vector<Vertex>& vs) {
  require_even(vs);
  try {
    return min_cost_perfect_matching_blossom(costs, vs);
  } catch (const ConsistencyError&) {
    if (vs.size() <= 22) return min_cost_perfect_matching_dp(costs, vs);
    throw;
  }
}

EdgeMultiset min_cost_q_join(const CostMatrix& costs, const std::vector<Vertex>& q) {
  EdgeMultiset j(costs.size());
  for (const auto& e : min_cost_perfect_matching(costs, q).pairs) j.add(e.first, e.second);
  return j;
}

Tour christofides(const CostMatrix& costs) {
  const int n = costs.size();
  if (n < 3) throw ParameterError("christofides needs n >= 3");
  auto mst = minimum_spanning_tree(costs, 0);
  EdgeMultiset m = mst.as_multiset();
  m.add_all(min_cost_q_join(costs, m.odd_vertices()));
  auto walk = euler_circuit(m, 0);
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<Vertex> cycle;
  for (Vertex v : walk)
    if (!seen[v]) {
      seen[v] = 1;
      cycle.push_back(v);
    }
  return Tour::from_cycle(costs, std::move(cycle));
}

}  // namespace otsp
