#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace otsp {

using Cost = std::int64_t;
using Vertex = int;

// Undirected edge, always stored with first < second.
using Edge = std::pair<Vertex, Vertex>;
inline Edge make_edge(Vertex u, Vertex v) { return u < v ? Edge{u, v} : Edge{v, u}; }

// Symmetric, zero-diagonal, nonnegative integer matrix. `scale` is the power of ten
// the document costs were multiplied by at parse time.
class CostMatrix {
 public:
  CostMatrix() = default;
  // Throws ParameterError on non-square, asymmetric, negative or nonzero-diagonal input.
  explicit CostMatrix(const std::vector<std::vector<Cost>>& rows, std::int64_t scale = 1);

  int size() const { return n_; }
  Cost operator()(Vertex u, Vertex v) const { return data_[static_cast<std::size_t>(u) * n_ + v]; }
  std::int64_t scale() const { return scale_; }
  Cost max_entry() const;
  std::vector<std::vector<Cost>> rows() const;

  // Induced submatrix on `vertices` (in that order).
  CostMatrix restricted(const std::vector<Vertex>& vertices) const;

  bool operator==(const CostMatrix&) const = default;

 private:
  int n_ = 0;
  std::int64_t scale_ = 1;
  std::vector<Cost> data_;
};

struct MetricReport {
  bool ok = true;
  std::vector<std::array<Vertex, 3>> violations;  // (u,v,w): c(u,w) > c(u,v) + c(v,w)
};

MetricReport validate_metric(const CostMatrix& costs);
// Same, but structural problems in the raw rows throw ParameterError.
MetricReport validate_metric(const std::vector<std::vector<Cost>>& rows);

CostMatrix metric_closure(const CostMatrix& costs);

class Instance {
 public:
  // Checks 2 <= k <= n, distinct in-range order vertices, and metricity.
  Instance(CostMatrix costs, std::vector<Vertex> order);

  const CostMatrix& costs() const { return costs_; }
  const std::vector<Vertex>& order() const { return order_; }
  int n() const { return costs_.size(); }
  int k() const { return static_cast<int>(order_.size()); }
  // d_{i+1} with d_{k+1} = d_1 (0-based i).
  Vertex d(int i) const { return order_[static_cast<std::size_t>(i % k())]; }
  bool is_ordered(Vertex v) const { return position_[static_cast<std::size_t>(v)] >= 0; }
  int position(Vertex v) const { return position_[static_cast<std::size_t>(v)]; }

  bool operator==(const Instance& o) const { return costs_ == o.costs_ && order_ == o.order_; }

 private:
  CostMatrix costs_;
  std::vector<Vertex> order_;
  std::vector<int> position_;
};

class ChainInstance {
 public:
  // Chains must be non-empty, pairwise disjoint, in range; costs metric.
  ChainInstance(CostMatrix costs, std::vector<std::vector<Vertex>> chains);

  const CostMatrix& costs() const { return costs_; }
  const std::vector<std::vector<Vertex>>& chains() const { return chains_; }
  int n() const { return costs_.size(); }
  int chain_count() const { return static_cast<int>(chains_.size()); }

  bool operator==(const ChainInstance&) const = default;

 private:
  CostMatrix costs_;
  std::vector<std::vector<Vertex>> chains_;
};

struct Tour {
  std::vector<Vertex> cycle;
  Cost cost = 0;

  static Tour from_cycle(const CostMatrix& costs, std::vector<Vertex> cycle);
  bool operator==(const Tour&) const = default;
};

Cost cycle_cost(const CostMatrix& costs, const std::vector<Vertex>& cycle);
bool is_permutation_cycle(const std::vector<Vertex>& cycle, int n);
// Some rotation/direction of the cycle meets `order` in index order.
bool visits_in_cyclic_order(const std::vector<Vertex>& cycle, const std::vector<Vertex>& order);

// Spanning, consistent cost, order respected. Empty string when fine.
std::string check_tour(const Instance& inst, const Tour& tour);

enum class GenKind { Euclidean, RandomClosure };
GenKind parse_gen_kind(const std::string& s);
std::string to_string(GenKind k);

// Deterministic in (kind, n, k, seed). Order vertices are drawn without replacement.
Instance generate(GenKind kind, int n, int k, std::uint64_t seed);
ChainInstance generate_chains(GenKind kind, int n, const std::vector<int>& chain_sizes,
                              std::uint64_t seed);

}  // namespace otsp
