#pragma once

#include <cstdint>
#include <vector>

namespace otsp::detail {

// Maximum-weight matching on n vertices; weights is a dense n*n matrix, entries <= 0
// mean "no edge". Weights should be even so that all duals stay integral.
// Returns mate[v] or -1.
std::vector<int> max_weight_matching(int n, const std::vector<std::int64_t>& weights);

}  // namespace otsp::detail
