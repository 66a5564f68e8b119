#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "otsp/assembly.hpp"

namespace otsp {

// True iff one rotation/direction of the cycle visits every chain in its order.
// Chains may interleave.
bool check_chain_order(const std::vector<Vertex>& cycle, const std::vector<std::vector<Vertex>>& chains);

struct GuessCertificate {
  Vertex guess = -1;             // d_0
  bool copied_root = false;      // d_0's own chain is {d_0}; a zero-distance copy was added
  std::vector<Rational> c_lp;    // per chain
  Cost cost = 0;
  Cost c_trees = 0, c_f = 0, c_j = 0, c_mst = 0, ev_bound = 0;
  Rational g;                    // derandomized only
  std::vector<Rational> telescope;
  Rational worst_isolation;      // max over unordered v of prod (1 - y^{ji}_v)
  Tour tour;
};

struct ChainResult {
  Tour tour;
  std::size_t best = 0;  // index into guesses
  std::vector<GuessCertificate> guesses;
  std::optional<std::uint64_t> seed;

  std::string to_json() const;
};

struct ChainOptions {
  bool derandomized = true;
  std::uint64_t seed = 0;  // used when !derandomized
  AssemblyOptions assembly;
};

// Tries every chain head as d_0 and keeps the cheapest tour (first on ties).
// Every guess is checked for order, the per-run bounds and, when derandomized,
// g <= (l + 1/2 + 1/e^l) * max_j c_LP^j.
ChainResult solve_chains(const ChainInstance& inst, const ChainOptions& opts = {});

}  // namespace otsp
