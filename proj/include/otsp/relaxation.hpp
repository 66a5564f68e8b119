#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "otsp/instance.hpp"
#include "otsp/lp/kernels.hpp"
#include "otsp/rational.hpp"

namespace otsp {

// One fractional d_i -> d_{i+1} stroll: edge values x (support only) and coverage y.
struct StrollPoint {
  int index = 0;
  Vertex s = 0, t = 0;
  std::map<Edge, Rational> x;
  std::vector<Rational> y;  // size n

  int n() const { return static_cast<int>(y.size()); }
  Rational x_at(Vertex u, Vertex v) const;
  Rational cost(const CostMatrix& c) const;
  // x(delta(v)) for every vertex
  std::vector<Rational> degrees() const;
  bool operator==(const StrollPoint&) const = default;
};

// Builds a point from x alone, with y_v = x(delta(v)) / 2.
StrollPoint make_stroll_point(int index, Vertex s, Vertex t, int n, const std::map<Edge, Rational>& x);

enum class CutFamily { SourceSink, Vertex };

// SourceSink: x(delta(S)) >= 1 with s in S, t not in S.
// Vertex:     x(delta(S)) >= 2 y_v with v in S, s,t not in S.
struct StrollCut {
  int stroll = 0;
  CutFamily family = CutFamily::SourceSink;
  std::vector<Vertex> side;  // sorted
  Vertex vertex = -1;
  Rational violation;  // rhs - lhs at the separated point (> 0)
};

// Exact separation. Precondition: degree identities and nonnegativity hold.
// Returns the most violated cut of each family (at most two), empty iff feasible.
std::vector<StrollCut> separate_stroll(const StrollPoint& point);

// Degree identity, y_s = y_t = 1/2, nonnegativity, y <= 1, then separation.
// Empty string iff the point lies in P_stroll.
std::string check_stroll_feasible(const StrollPoint& point);

struct RelaxationStats {
  int rounds = 0;         // separation rounds (float and exact)
  int cuts_added = 0;
  int exact_checks = 0;   // exact certifications attempted
  int exact_retries = 0;  // certifications that failed and forced a tighter re-solve
  std::int64_t simplex_iterations = 0;
  std::int64_t refactorizations = 0;
  int rows = 0, columns = 0;
};

struct RelaxationSolution {
  std::vector<StrollPoint> strolls;
  Rational objective;
  RelaxationStats stats;
  std::vector<StrollCut> cuts;
};

struct RelaxationOptions {
  lp::Exec exec = lp::Exec::Serial;
  int max_rounds = 0;  // 0 means 10 * n * k
};

RelaxationSolution solve_relaxation(const Instance& inst, const RelaxationOptions& opts = {});

// Linking + objective + per-stroll feasibility, exact. Empty string when fine.
std::string verify_relaxation(const Instance& inst, const RelaxationSolution& sol);

struct HeldKarpCertificate {
  std::map<Edge, Rational> x;  // sum over strolls
  Rational min_cut;            // global minimum cut of the aggregate
  std::vector<Vertex> min_cut_side;
  bool ok = false;
};

// Throws ConsistencyError when x(delta(v)) != 2 for some v or the global min cut is < 2.
HeldKarpCertificate aggregate_held_karp(const RelaxationSolution& sol, int n);

std::string relaxation_to_json(const RelaxationSolution& sol);
RelaxationSolution relaxation_from_json(const std::string& text, const Instance& inst);

}  // namespace otsp
