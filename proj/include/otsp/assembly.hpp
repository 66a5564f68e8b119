#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "otsp/decomposition.hpp"
#include "otsp/relaxation.hpp"
#include "otsp/spanning.hpp"

namespace otsp {

// Per-stroll tree families. A group is one cyclic order (the whole instance for
// OTSP, one chain with its root for the chain variant); families[i] runs from
// order[i] to order[i+1] (cyclically). Every tree of a group meets the group's
// order set exactly in its two endpoints, and every other vertex is covered with
// total weight 1 across the group.
struct ConnectingTreeDistribution {
  struct Group {
    std::vector<Vertex> order;
    std::vector<WeightedTreeFamily> families;
  };

  int n = 0;
  std::vector<Group> groups;

  // Flattened stroll count and access, groups in order.
  int stroll_count() const;
  const WeightedTreeFamily& family(int flat) const;
  // Sequence of stroll start vertices; tree paths between consecutive entries
  // concatenate to the ordered walk.
  std::vector<Vertex> stops() const;
  // Order the tour must respect: group 0's order, then each later group's order
  // minus vertices already listed.
  std::vector<Vertex> visit_order() const;
  // Empty string when all invariants hold (exact).
  std::string validate() const;
};

// Decomposes every stroll of the solution; strolls run concurrently with Exec::Parallel.
ConnectingTreeDistribution build_distribution(const Instance& inst, const RelaxationSolution& sol,
                                              const DecompositionOptions& opts, lp::Exec exec = lp::Exec::Serial);

// Choice of one tree per flattened stroll, as indices into the families.
using TreeChoice = std::vector<std::size_t>;

// Stroll i draws from Rng(substream_seed(seed, i)) with exact rational thresholds.
TreeChoice sample_trees(const ConnectingTreeDistribution& dist, std::uint64_t seed);

// trees[i] must contain stops[i] and stops[i+1] (cyclically). Returns the closed
// walk (first == last) made of the tree paths between consecutive stops.
std::vector<Vertex> ordered_walk(const std::vector<const WeightedTree*>& trees, const std::vector<Vertex>& stops);

struct Connector {
  EdgeMultiset edges;
  Cost cost = 0;
  std::vector<Vertex> isolated;
  Cost ev_bound = 0;  // sum of c(e_v) over isolated v
};

// Minimum-cost F making H_0 + F connected. H_0 must be one component plus isolated
// vertices, and mst.root must lie in the big component.
Connector connect_isolated(const CostMatrix& costs, const EdgeMultiset& h0, const OrientedMst& mst);

// Minimum-cost odd(H)-join.
EdgeMultiset parity_correct(const CostMatrix& costs, const EdgeMultiset& h);

// Turns a connected Eulerian multigraph plus a closed walk inside it that visits
// `order` in sequence into a spanning cycle visiting `order` in sequence, never
// longer than c(M). The cycle starts at order[0].
Tour shortcut_to_tour(const CostMatrix& costs, const EdgeMultiset& m, const std::vector<Vertex>& walk,
                      const std::vector<Vertex>& order);

struct Assembly {
  TreeChoice choice;
  EdgeMultiset h0;
  std::vector<Vertex> walk;
  Connector f;
  EdgeMultiset j;
  Cost c_trees = 0, c_j = 0;
  Tour tour;
};

// H_0 from the chosen trees, then F, J and shortcutting. mst must be rooted at the
// first stop.
Assembly assemble(const CostMatrix& costs, const ConnectingTreeDistribution& dist, const TreeChoice& choice,
                  const OrientedMst& mst);

// Conditional expectation of g = c(trees) + sum over uncovered v of c(e_v) + join_term,
// given the first `fixed` strolls are set to choice[0..fixed).
Rational conditional_g(const CostMatrix& costs, const ConnectingTreeDistribution& dist, const OrientedMst& mst,
                       const TreeChoice& choice, int fixed, const Rational& join_term);

// Method of conditional expectations; fills `telescope` with E[g | S_1..S_i], i = 0..k.
// Throws ConsistencyError if the sequence ever increases.
TreeChoice derandomized_choice(const CostMatrix& costs, const ConnectingTreeDistribution& dist,
                               const OrientedMst& mst, const Rational& join_term,
                               std::vector<Rational>* telescope = nullptr);

struct Certificate {
  Rational c_lp;
  Cost cost = 0;
  Cost c_trees = 0, c_f = 0, c_j = 0;
  Cost c_mst = 0, ev_bound = 0;
  std::optional<std::uint64_t> seed;  // empty for the derandomized run
  std::vector<Rational> telescope;    // derandomized only
  Rational g;                         // derandomized only: final g value

  std::string ratio_vs_lp() const;  // 10 digits, rounded up
  std::string to_json() const;
};

struct PreparedInstance {
  RelaxationSolution lp;
  ConnectingTreeDistribution dist;
  OrientedMst mst;
};

struct AssemblyOptions {
  lp::Exec exec = lp::Exec::Serial;
  DecompositionOptions decomposition = DecompositionOptions::from_environment();
};

PreparedInstance prepare(const Instance& inst, const AssemblyOptions& opts = {});

struct OtspRun {
  Assembly assembly;
  Certificate certificate;
};

// Both check the tour and every per-run structural bound, throwing ConsistencyError
// on a violation.
OtspRun run_randomized(const Instance& inst, const PreparedInstance& prep, std::uint64_t seed);
OtspRun run_derandomized(const Instance& inst, const PreparedInstance& prep);

OtspRun solve_randomized(const Instance& inst, std::uint64_t seed, const AssemblyOptions& opts = {});
OtspRun solve_derandomized(const Instance& inst, const AssemblyOptions& opts = {});

// Largest prod_i (1 - y^i_v) over vertices outside every group's order set, and
// whether it stays below 1/e^groups (exact).
struct IsolationBound {
  Rational worst;
  Vertex vertex = -1;
  bool ok = true;
};
IsolationBound isolation_bound(const ConnectingTreeDistribution& dist);

}  // namespace otsp
