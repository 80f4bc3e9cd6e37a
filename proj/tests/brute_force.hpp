#pragma once

// Test-only exhaustive oracles. They work on bitmasks straight from the
// pairwise adjacency test and never call the cascade/oracle code they check.

#include <bit>
#include <cstdint>
#include <set>
#include <vector>

#include "majctl/graph.hpp"

namespace brute {

using majctl::Graph;
using majctl::Node;
using Mask = std::uint32_t;

/// Agreeing edges, by scanning every node pair.
inline long potential(const Graph& g, Mask x) {
  long agree = 0;
  const auto n = static_cast<Node>(g.num_nodes());
  for (Node i = 0; i < n; ++i) {
    for (Node j = i + 1; j < n; ++j) {
      if (g.has_edge(i, j) && (((x >> i) & 1U) == ((x >> j) & 1U))) ++agree;
    }
  }
  return agree;
}

inline Mask full(const Graph& g) { return (Mask{1} << g.num_nodes()) - 1; }

/// Searches every monotone crusade from `c`: adds one node at a time and
/// keeps a branch only while the potential does not decrease. Memoized on
/// the visited masks.
inline bool valid_by_crusade_search(const Graph& g, Mask c) {
  const Mask top = full(g);
  std::vector<std::uint8_t> seen(std::size_t{1} << g.num_nodes(), 0);
  std::vector<Mask> stack{c};
  seen[c] = 1;
  while (!stack.empty()) {
    const Mask x = stack.back();
    stack.pop_back();
    if (x == top) return true;
    const long phi = potential(g, x);
    for (Node i = 0; i < g.num_nodes(); ++i) {
      if ((x >> i) & 1U) continue;
      const Mask y = x | (Mask{1} << i);
      if (!seen[y] && potential(g, y) >= phi) {
        seen[y] = 1;
        stack.push_back(y);
      }
    }
  }
  return false;
}

/// Validity of every subset, indexed by mask.
inline std::vector<std::uint8_t> valid_table(const Graph& g) {
  std::vector<std::uint8_t> t(std::size_t{1} << g.num_nodes());
  for (Mask c = 0; c < t.size(); ++c) t[c] = valid_by_crusade_search(g, c) ? 1 : 0;
  return t;
}

/// Minimal sets: valid with no valid strict subset.
inline std::set<Mask> minimal_sets(const Graph& g) {
  const auto valid = valid_table(g);
  std::set<Mask> out;
  for (Mask c = 0; c < valid.size(); ++c) {
    if (!valid[c]) continue;
    bool minimal = true;
    for (Mask s = (c - 1) & c; minimal; s = (s - 1) & c) {
      if (valid[s]) minimal = false;
      if (s == 0) break;
    }
    if (c == 0) minimal = true;
    if (minimal) out.insert(c);
  }
  return out;
}

inline long minority_utility(const Graph& g, Mask x, Node i) {
  long u = 0;
  for (Node j = 0; j < g.num_nodes(); ++j) {
    if (g.has_edge(i, j) && (((x >> i) & 1U) != ((x >> j) & 1U))) ++u;
  }
  return u;
}

/// Minority-game equilibria: no unilateral flip raises the deviator's utility.
inline std::set<Mask> minority_nash(const Graph& g) {
  std::set<Mask> out;
  for (Mask x = 0; x <= full(g); ++x) {
    bool nash = true;
    for (Node i = 0; i < g.num_nodes() && nash; ++i) {
      if (minority_utility(g, x ^ (Mask{1} << i), i) > minority_utility(g, x, i)) nash = false;
    }
    if (nash) out.insert(x);
    if (x == full(g)) break;
  }
  return out;
}

inline std::vector<Node> members(Mask m) {
  std::vector<Node> out;
  for (Node i = 0; i < 32; ++i) {
    if ((m >> i) & 1U) out.push_back(i);
  }
  return out;
}

}  // namespace brute
