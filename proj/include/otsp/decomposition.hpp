#pragma once

#include <map>
#include <string>
#include <vector>

#include "otsp/relaxation.hpp"

namespace otsp {

// (x', y') = (x + chi^{st}, y + (chi^s + chi^t)/2) with root s and anchor t.
struct ClosedStrollPoint {
  Vertex root = 0, anchor = 0;
  std::map<Edge, Rational> x;
  std::vector<Rational> y;
};

// Throws PreconditionError if the stroll point is not in P_stroll.
ClosedStrollPoint close_stroll(const StrollPoint& point);

struct WeightedTree {
  std::vector<Edge> edges;       // sorted
  std::vector<Vertex> vertices;  // sorted
  Rational mu;

  bool contains(Vertex v) const;
  Cost cost(const CostMatrix& c) const;
};

struct WeightedTreeFamily {
  Vertex s = 0, t = 0;
  std::vector<WeightedTree> trees;

  // sum_T mu_T c(E[T])
  Rational expected_cost(const CostMatrix& c) const;
  // sum_{T containing v} mu_T
  Rational coverage(Vertex v) const;
};

struct DecompositionOptions {
  mpz_class scale_cap;  // largest admissible lcm of denominators
  long max_trees = 200000;
  int attempts = 8;  // packing restarts before the brute-force fallback

  DecompositionOptions();
  // Default cap 2^64, overridden by OTSP_SCALE_CAP when set.
  static DecompositionOptions from_environment();
};

struct DecompositionStats {
  mpz_class scale;
  long trees = 0;
  long flow_calls = 0;
  int attempts = 0;
  bool fallback = false;  // brute force produced the family
};

WeightedTreeFamily decompose(const StrollPoint& point, const DecompositionOptions& opts,
                             DecompositionStats* stats = nullptr);
WeightedTreeFamily decompose(const StrollPoint& point);

// Enumerates every subtree of the support containing s and t and solves the exact
// feasibility LP for the weights. Support must have at most 16 edges.
WeightedTreeFamily decompose_bruteforce(const StrollPoint& point);

struct DecompositionReport {
  bool ok = true;
  std::vector<std::string> violations;
};

DecompositionReport verify_decomposition(const StrollPoint& point, const WeightedTreeFamily& fam);

std::string family_to_json(const WeightedTreeFamily& fam);
WeightedTreeFamily family_from_json(const std::string& text);

}  // namespace otsp
