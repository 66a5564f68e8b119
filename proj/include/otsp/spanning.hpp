#pragma once

#include <map>
#include <vector>

#include "otsp/instance.hpp"

namespace otsp {

// Multigraph on vertices [0, n). Used for H_0, F, H, J and their unions.
class EdgeMultiset {
 public:
  EdgeMultiset() = default;
  explicit EdgeMultiset(int n) : n_(n), degree_(static_cast<std::size_t>(n), 0) {}

  int vertex_count() const { return n_; }
  void add(Vertex u, Vertex v, int count = 1);
  void add_all(const EdgeMultiset& other);
  // Throws PreconditionError if fewer than `count` copies are present.
  void remove(Vertex u, Vertex v, int count = 1);
  int multiplicity(Vertex u, Vertex v) const;
  int degree(Vertex v) const { return degree_[static_cast<std::size_t>(v)]; }
  const std::vector<int>& degrees() const { return degree_; }
  std::vector<Vertex> odd_vertices() const;
  std::size_t size() const { return total_; }
  bool empty() const { return total_ == 0; }
  Cost cost(const CostMatrix& c) const;
  const std::map<Edge, int>& entries() const { return mult_; }

  // Component id per vertex (isolated vertices get their own component).
  std::vector<int> components() const;
  bool is_connected() const;  // ignoring nothing: every vertex must be reached
  bool is_eulerian() const;   // connected, all degrees even

  bool operator==(const EdgeMultiset&) const = default;

 private:
  int n_ = 0;
  std::vector<int> degree_;
  std::map<Edge, int> mult_;
  std::size_t total_ = 0;
};

// Closed Euler circuit (vertex sequence, first == last) through all edges of the
// component of `start`. Edges are consumed in (neighbor index) order.
std::vector<Vertex> euler_circuit(const EdgeMultiset& m, Vertex start);

struct OrientedMst {
  Vertex root = 0;
  std::vector<Edge> edges;
  std::vector<Vertex> parent;  // parent[root] = -1; e_v = {v, parent[v]}
  Cost cost = 0;

  Cost out_edge_cost(const CostMatrix& c, Vertex v) const { return c(v, parent[static_cast<std::size_t>(v)]); }
  EdgeMultiset as_multiset() const;
};

// Kruskal with ties broken by (cost, u, v); oriented toward `root`.
OrientedMst minimum_spanning_tree(const CostMatrix& costs, Vertex root = 0);

struct Matching {
  std::vector<Edge> pairs;
  Cost cost = 0;
};

// Minimum-cost perfect matching on the complete graph over `vertices` (|vertices| even).
Matching min_cost_perfect_matching(const CostMatrix& costs, const std::vector<Vertex>& vertices);
// Blossom only, no DP shortcut. Exposed for cross-checking.
Matching min_cost_perfect_matching_blossom(const CostMatrix& costs, const std::vector<Vertex>& vertices);
// Subset DP, |vertices| <= 22.
Matching min_cost_perfect_matching_dp(const CostMatrix& costs, const std::vector<Vertex>& vertices);

// Edges with odd degree exactly at Q, minimum cost (a perfect matching on Q under a metric).
EdgeMultiset min_cost_q_join(const CostMatrix& costs, const std::vector<Vertex>& q);

// Christofides-Serdyukov, no order constraint. n >= 3.
Tour christofides(const CostMatrix& costs);

}  // namespace otsp
