#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace majctl {

using Node = std::uint32_t;
using Edge = std::pair<Node, Node>;

/// Simple undirected graph on nodes 0..n-1, stored as compressed sorted
/// adjacency lists. Immutable after construction.
class Graph {
 public:
  /// Builds a graph from unordered pairs. Duplicate pairs (in either
  /// orientation) collapse to one edge. Throws std::invalid_argument on
  /// n == 0, self-loops and out-of-range ids.
  static Graph from_edge_list(std::size_t n, std::span<const Edge> edges);

  std::size_t num_nodes() const { return offsets_.size() - 1; }
  std::size_t num_edges() const { return targets_.size() / 2; }

  std::size_t degree(Node i) const { return offsets_[i + 1] - offsets_[i]; }

  std::span<const Node> neighbors(Node i) const {
    return {targets_.data() + offsets_[i], degree(i)};
  }

  bool has_edge(Node u, Node v) const;

  /// Edges with u < v, sorted lexicographically.
  std::vector<Edge> edges() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  Graph() = default;

  std::vector<std::size_t> offsets_;
  std::vector<Node> targets_;

  friend std::optional<std::string> audit(const Graph& g);
};

/// Checks the structural invariants (no self-loops, symmetric, sorted
/// duplicate-free adjacency). Returns a description of the first violation.
std::optional<std::string> audit(const Graph& g);

// Generators. All throw std::invalid_argument on invalid size parameters.

Graph gen_clique(std::size_t k);
Graph gen_path(std::size_t n);
Graph gen_cycle(std::size_t n);
/// Center 0, leaves 1..leaves.
Graph gen_star(std::size_t leaves);
/// Two degree-4 hubs joined through two degree-2 middle nodes, each hub with
/// two pendant leaves (n = 8, m = 8).
///   0: right hub, 1: left hub, 2,3: middle nodes,
///   4,5: leaves of the left hub, 6,7: leaves of the right hub.
Graph gen_double_star();
/// G(n, p): every unordered pair included independently with probability p.
Graph gen_erdos_renyi(std::size_t n, double p, std::uint64_t seed);
/// Uniform labeled tree via a random Prufer sequence.
Graph gen_random_tree(std::size_t n, std::uint64_t seed);
/// Node ids of b are shifted by a.num_nodes().
Graph disjoint_union(const Graph& a, const Graph& b);

namespace double_star {
inline constexpr Node kRightHub = 0;
inline constexpr Node kLeftHub = 1;
}  // namespace double_star

// Edge-list text format:
//   # comment lines are ignored (as are blank lines)
//   n m
//   u v     (m lines, 0-indexed)
// The writer emits edges with u < v in lexicographic order.

Graph read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const Graph& g);
Graph load_edge_list(const std::filesystem::path& path);
void save_edge_list(const std::filesystem::path& path, const Graph& g);

/// 64-bit FNV-1a hash of the canonical edge-list text, as 16 hex digits.
std::string digest(const Graph& g);

}  // namespace majctl
