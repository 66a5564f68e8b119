#include "otsp/instance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "otsp/error.hpp"
#include "otsp/rng.hpp"

namespace otsp {

namespace {

void check_rows(const std::vector<std::vector<Cost>>& rows) {
  const std::size_t n = rows.size();
  for (std::size_t u = 0; u < n; ++u) {
    if (rows[u].size() != n)
      throw ParameterError("cost matrix is not square: row " + std::to_string(u) + " has " +
                           std::to_string(rows[u].size()) + " entries, expected " +
                           std::to_string(n));
  }
  for (std::size_t u = 0; u < n; ++u) {
    if (rows[u][u] != 0) throw ParameterError("nonzero diagonal entry at " + std::to_string(u));
    for (std::size_t v = 0; v < n; ++v) {
      if (rows[u][v] < 0)
        throw ParameterError("negative cost at (" + std::to_string(u) + "," + std::to_string(v) + ")");
      if (rows[u][v] != rows[v][u])
        throw ParameterError("asymmetric costs at (" + std::to_string(u) + "," + std::to_string(v) + ")");
    }
  }
}

}  // namespace

CostMatrix::CostMatrix(const std::vector<std::vector<Cost>>& rows, std::int64_t scale)
    : n_(static_cast<int>(rows.size())), scale_(scale) {
  check_rows(rows);
  if (scale < 1) throw ParameterError("scale must be positive");
  data_.reserve(rows.size() * rows.size());
  Cost mx = 0;
  for (const auto& r : rows)
    for (Cost c : r) {
      data_.push_back(c);
      mx = std::max(mx, c);
    }
  // Tour and walk costs are sums of at most ~4n entries; keep them far from overflow.
  if (n_ > 0 && mx > std::numeric_limits<Cost>::max() / (8 * static_cast<Cost>(n_) + 8))
    throw ParameterError("cost entries too large for 64-bit accumulation");
}

Cost CostMatrix::max_entry() const {
  return data_.empty() ? 0 : *std::max_element(data_.begin(), data_.end());
}

std::vector<std::vector<Cost>> CostMatrix::rows() const {
  std::vector<std::vector<Cost>> out(static_cast<std::size_t>(n_));
  for (int u = 0; u < n_; ++u)
    out[u].assign(data_.begin() + static_cast<std::ptrdiff_t>(u) * n_,
                  data_.begin() + static_cast<std::ptrdiff_t>(u + 1) * n_);
  return out;
}

CostMatrix CostMatrix::restricted(const std::vector<Vertex>& vertices) const {
  std::vector<std::vector<Cost>> rows(vertices.size(), std::vector<Cost>(vertices.size()));
  for (std::size_t a = 0; a < vertices.size(); ++a)
    for (std::size_t b = 0; b < vertices.size(); ++b) rows[a][b] = (*this)(vertices[a], vertices[b]);
  return CostMatrix(rows, scale_);
}

MetricReport validate_metric(const CostMatrix& c) {
  MetricReport rep;
  const int n = c.size();
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      for (int w = 0; w < n; ++w)
        if (c(u, w) > c(u, v) + c(v, w)) rep.violations.push_back({u, v, w});
  rep.ok = rep.violations.empty();
  return rep;
}

MetricReport validate_metric(const std::vector<std::vector<Cost>>& rows) {
  return validate_metric(CostMatrix(rows));
}

CostMatrix metric_closure(const CostMatrix& costs) {
  auto d = costs.rows();
  const std::size_t n = d.size();
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v) d[u][v] = std::min(d[u][v], d[u][m] + d[m][v]);
  return CostMatrix(d, costs.scale());
}

Instance::Instance(CostMatrix costs, std::vector<Vertex> order)
    : costs_(std::move(costs)), order_(std::move(order)) {
  const int n = costs_.size();
  if (order_.size() < 2)
    throw ParameterError("order constraint needs k >= 2 (got k = " + std::to_string(order_.size()) +
                         "); use the plain TSP mode for unordered instances");
  if (static_cast<int>(order_.size()) > n) throw ParameterError("k > n");
  position_.assign(static_cast<std::size_t>(n), -1);
  for (std::size_t i = 0; i < order_.size(); ++i) {
    Vertex v = order_[i];
    if (v < 0 || v >= n) throw ParameterError("order vertex " + std::to_string(v) + " out of range");
    if (position_[v] >= 0) throw ParameterError("duplicate order vertex " + std::to_string(v));
    position_[v] = static_cast<int>(i);
  }
  auto rep = validate_metric(costs_);
  if (!rep.ok) {
    auto [u, v, w] = rep.violations.front();
    throw ParameterError("costs violate the triangle inequality at (" + std::to_string(u) + "," +
                         std::to_string(v) + "," + std::to_string(w) + "), " +
                         std::to_string(rep.violations.size()) + " violating triples");
  }
}

ChainInstance::ChainInstance(CostMatrix costs, std::vector<std::vector<Vertex>> chains)
    : costs_(std::move(costs)), chains_(std::move(chains)) {
  const int n = costs_.size();
  if (chains_.empty()) throw ParameterError("need at least one chain");
  std::vector<int> owner(static_cast<std::size_t>(n), -1);
  for (std::size_t j = 0; j < chains_.size(); ++j) {
    if (chains_[j].empty()) throw ParameterError("chain " + std::to_string(j) + " is empty");
    for (Vertex v : chains_[j]) {
      if (v < 0 || v >= n) throw ParameterError("chain vertex " + std::to_string(v) + " out of range");
      if (owner[v] >= 0)
        throw ParameterError("vertex " + std::to_string(v) + " appears in chains " +
                             std::to_string(owner[v]) + " and " + std::to_string(j));
      owner[v] = static_cast<int>(j);
    }
  }
  if (!validate_metric(costs_).ok) throw ParameterError("costs violate the triangle inequality");
}

Cost cycle_cost(const CostMatrix& costs, const std::vector<Vertex>& cycle) {
  Cost total = 0;
  for (std::size_t i = 0; i < cycle.size(); ++i) total += costs(cycle[i], cycle[(i + 1) % cycle.size()]);
  return cycle.size() < 2 ? 0 : total;
}

Tour Tour::from_cycle(const CostMatrix& costs, std::vector<Vertex> cycle) {
  Tour t;
  t.cost = cycle_cost(costs, cycle);
  t.cycle = std::move(cycle);
  return t;
}

bool is_permutation_cycle(const std::vector<Vertex>& cycle, int n) {
  if (static_cast<int>(cycle.size()) != n) return false;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (Vertex v : cycle) {
    if (v < 0 || v >= n || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

bool visits_in_cyclic_order(const std::vector<Vertex>& cycle, const std::vector<Vertex>& order) {
  if (order.size() <= 2) {
    // two points are always in cyclic order, provided they are present
    for (Vertex d : order)
      if (std::find(cycle.begin(), cycle.end(), d) == cycle.end()) return false;
    return true;
  }
  std::vector<int> pos;
  for (Vertex d : order) {
    auto it = std::find(cycle.begin(), cycle.end(), d);
    if (it == cycle.end()) return false;
    pos.push_back(static_cast<int>(it - cycle.begin()));
  }
  // Cyclic order forward: the sequence of positions has at most one descent (wrap).
  auto descents = [&](bool forward) {
    int cnt = 0;
    for (std::size_t i = 0; i < pos.size(); ++i) {
      int a = pos[i], b = pos[(i + 1) % pos.size()];
      if (forward ? b < a : b > a) ++cnt;
    }
    return cnt;
  };
  return descents(true) == 1 || descents(false) == 1;
}

std::string check_tour(const Instance& inst, const Tour& tour) {
  if (!is_permutation_cycle(tour.cycle, inst.n())) return "cycle is not a permutation of all vertices";
  if (cycle_cost(inst.costs(), tour.cycle) != tour.cost) return "stored cost differs from cycle cost";
  if (!visits_in_cyclic_order(tour.cycle, inst.order())) return "order constraint violated";
  return {};
}

GenKind parse_gen_kind(const std::string& s) {
  if (s == "euclidean") return GenKind::Euclidean;
  if (s == "random_closure") return GenKind::RandomClosure;
  throw ParameterError("unknown instance kind '" + s + "' (euclidean | random_closure)");
}

std::string to_string(GenKind k) { return k == GenKind::Euclidean ? "euclidean" : "random_closure"; }

namespace {

CostMatrix generate_costs(GenKind kind, int n, Rng& rng) {
  std::vector<std::vector<Cost>> rows(static_cast<std::size_t>(n), std::vector<Cost>(static_cast<std::size_t>(n), 0));
  if (kind == GenKind::Euclidean) {
    std::vector<std::pair<std::int64_t, std::int64_t>> pts(static_cast<std::size_t>(n));
    for (auto& p : pts) {
      p.first = static_cast<std::int64_t>(rng.below(1001));
      p.second = static_cast<std::int64_t>(rng.below(1001));
    }
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) {
        double dx = static_cast<double>(pts[u].first - pts[v].first);
        double dy = static_cast<double>(pts[u].second - pts[v].second);
        rows[u][v] = rows[v][u] = static_cast<Cost>(std::llround(std::sqrt(dx * dx + dy * dy)));
      }
  } else {
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) rows[u][v] = rows[v][u] = 1 + static_cast<Cost>(rng.below(100));
  }
  // rounding can break the triangle inequality by one unit
  return metric_closure(CostMatrix(rows));
}

std::vector<Vertex> draw_distinct(int n, int count, Rng& rng) {
  std::vector<Vertex> pool(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pool[i] = i;
  for (int i = 0; i < count; ++i) {
    auto j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - i)));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(static_cast<std::size_t>(count));
  return pool;
}

}  // namespace

Instance generate(GenKind kind, int n, int k, std::uint64_t seed) {
  if (n < 2) throw ParameterError("n must be at least 2");
  if (k < 2) throw ParameterError("k must be at least 2");
  if (k > n) throw ParameterError("k > n");
  Rng rng(seed);
  CostMatrix costs = generate_costs(kind, n, rng);
  return Instance(std::move(costs), draw_distinct(n, k, rng));
}

ChainInstance generate_chains(GenKind kind, int n, const std::vector<int>& sizes, std::uint64_t seed) {
  if (sizes.empty()) throw ParameterError("need at least one chain");
  int total = 0;
  for (int s : sizes) {
    if (s < 1) throw ParameterError("chain sizes must be positive");
    total += s;
  }
  if (total > n) throw ParameterError("chains need more vertices than n");
  Rng rng(seed);
  CostMatrix costs = generate_costs(kind, n, rng);
  auto drawn = draw_distinct(n, total, rng);
  std::vector<std::vector<Vertex>> chains;
  std::size_t at = 0;
  for (int s : sizes) {
    chains.emplace_back(drawn.begin() + static_cast<std::ptrdiff_t>(at),
                        drawn.begin() + static_cast<std::ptrdiff_t>(at + s));
    at += static_cast<std::size_t>(s);
  }
  return ChainInstance(std::move(costs), std::move(chains));
}

}  // namespace otsp
