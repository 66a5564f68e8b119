#pragma once

#include <string>

#include "otsp/instance.hpp"

namespace otsp {

struct BaselineResult {
  Tour tour;
  // "cycle" (k = n), "insertion" (one free vertex, optimal) or "christofides"
  std::string method;
};

// Ordered cycle d_1..d_k spliced at d_1 with a Christofides tour on the free
// vertices plus d_1, then shortcut. At most 5/2 times the optimum.
BaselineResult baseline_52(const Instance& inst);

}  // namespace otsp
