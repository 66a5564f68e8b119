#pragma once

#include <cstdint>

#include "otsp/instance.hpp"

namespace otsp {

struct OracleResult {
  Cost cost = 0;
  Tour tour;
  std::int64_t states = 0;  // DP states or permutations examined
};

// Held-Karp style DP over (visited set, last vertex) anchored at d_1; an order
// vertex may only be added once all of its predecessors are in the set.
OracleResult solve_exact(const Instance& inst, int max_n = 14);

// Optimum over Hamiltonian cycles respecting each chain's internal order (chains
// may interleave). DP per rotation start.
OracleResult solve_exact_chains(const ChainInstance& inst, int max_n = 12);

// Plain enumeration of all (n-1)! cycles through d_1, filtered by order. n <= 9.
OracleResult solve_bruteforce(const Instance& inst);
OracleResult solve_bruteforce_chains(const ChainInstance& inst);

}  // namespace otsp
