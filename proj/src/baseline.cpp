#include "otsp/baseline.hpp"

#include "otsp/assembly.hpp"
#include "otsp/error.hpp"
#include "otsp/spanning.hpp"

namespace otsp {

BaselineResult baseline_52(const Instance& inst) {
  const auto& c = inst.costs();
  const int n = inst.n(), k = inst.k();
  std::vector<Vertex> cycle = inst.order();
  if (n == k) return {Tour::from_cycle(c, cycle), "cycle"};

  std::vector<Vertex> rest;
  for (Vertex v = 0; v < n; ++v)
    if (!inst.is_ordered(v)) rest.push_back(v);

  if (rest.size() == 1) {
    // every feasible tour is the d-cycle with r inserted somewhere, so the
    // cheapest insertion is already optimal
    const Vertex r = rest.front();
    std::size_t best = 0;
    Cost best_delta = 0;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      const Vertex a = cycle[i], b = cycle[(i + 1) % cycle.size()];
      const Cost delta = c(a, r) + c(r, b) - c(a, b);
      if (i == 0 || delta < best_delta) {
        best = i;
        best_delta = delta;
      }
    }
    cycle.insert(cycle.begin() + static_cast<std::ptrdiff_t>(best) + 1, r);
    return {Tour::from_cycle(c, cycle), "insertion"};
  }

  std::vector<Vertex> sub{inst.d(0)};
  sub.insert(sub.end(), rest.begin(), rest.end());
  const Tour local = christofides(c.restricted(sub));
  EdgeMultiset m(n);
  std::vector<Vertex> walk = cycle;
  walk.push_back(cycle.front());
  for (std::size_t i = 0; i + 1 < walk.size(); ++i) m.add(walk[i], walk[i + 1]);
  for (std::size_t i = 0; i < local.cycle.size(); ++i)
    m.add(sub[static_cast<std::size_t>(local.cycle[i])],
          sub[static_cast<std::size_t>(local.cycle[(i + 1) % local.cycle.size()])]);
  return {shortcut_to_tour(c, m, walk, inst.order()), "christofides"};
}

}  // namespace otsp
