#pragma once

// Small graphs with known control-set structure, and random-instance helpers
// shared by the unit and acceptance suites.

#include <cstdint>
#include <string>
#include <vector>

#include "majctl/cascade.hpp"
#include "majctl/graph.hpp"
#include "majctl/random.hpp"

namespace fixtures {

using majctl::ControlSet;
using majctl::Edge;
using majctl::Graph;
using majctl::Node;

/// Ten-node tree: root 0 with children 1 and 2; 1 -> {3, 5}, 3 -> {4};
/// 2 -> {6, 7}, 6 -> {8, 9}. Leaves {4, 5, 7, 8, 9}; {1, 6} is a minimal
/// control set of size 2.
inline Graph tree10() {
  const std::vector<Edge> e{{0, 1}, {0, 2}, {1, 3}, {3, 4}, {1, 5}, {2, 6}, {2, 7}, {6, 8}, {6, 9}};
  return Graph::from_edge_list(10, e);
}
inline ControlSet tree10_leaves() { return ControlSet({4, 5, 7, 8, 9}); }
inline ControlSet tree10_pair() { return ControlSet({1, 6}); }

/// Triangle (0-2), 5-cycle (3-7) and 6-path (8-13) side by side.
inline Graph degree_two_union() {
  return majctl::disjoint_union(majctl::disjoint_union(majctl::gen_cycle(3), majctl::gen_cycle(5)),
                                majctl::gen_path(6));
}
inline ControlSet degree_two_union_seeds() { return ControlSet({0, 3, 10}); }

inline Graph edgeless(std::size_t n) { return Graph::from_edge_list(n, std::vector<Edge>{}); }

struct Named {
  std::string name;
  Graph graph;
};

/// Every hand-built fixture graph.
inline std::vector<Named> all() {
  using namespace majctl;
  return {
      {"tree10", tree10()},
      {"triangle", gen_cycle(3)},
      {"C5", gen_cycle(5)},
      {"P6", gen_path(6)},
      {"P5", gen_path(5)},
      {"P4", gen_path(4)},
      {"P2", gen_path(2)},
      {"star3", gen_star(3)},
      {"doublestar", gen_double_star()},
      {"K3", gen_clique(3)},
      {"K4", gen_clique(4)},
      {"K5", gen_clique(5)},
      {"degree_two_union", degree_two_union()},
      {"edgeless4", edgeless(4)},
  };
}

/// Random G(n, 1/2) with n drawn from [lo, hi].
inline Graph random_er(majctl::Rng& rng, std::size_t lo, std::size_t hi, double p = 0.5) {
  const std::size_t n = lo + rng.uniform_index(hi - lo + 1);
  return majctl::gen_erdos_renyi(n, p, rng.next());
}

inline ControlSet random_subset(majctl::Rng& rng, std::size_t n, double density = 0.5) {
  std::vector<Node> m;
  for (Node i = 0; i < n; ++i) {
    if (rng.bernoulli(density)) m.push_back(i);
  }
  return ControlSet(std::move(m));
}

}  // namespace fixtures
