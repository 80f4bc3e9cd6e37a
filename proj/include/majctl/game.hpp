#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "majctl/graph.hpp"

namespace majctl {

/// Binary action profile x in {0,1}^n.
class Configuration {
 public:
  Configuration() = default;
  explicit Configuration(std::size_t n, bool value = false) : bits_(n, value ? 1 : 0) {}

  static Configuration zeros(std::size_t n) { return Configuration(n, false); }
  static Configuration ones(std::size_t n) { return Configuration(n, true); }
  /// Indicator vector of a node set. Throws std::out_of_range on ids >= n.
  static Configuration indicator(std::size_t n, std::span<const Node> nodes);
  /// Parses "01101"; throws std::invalid_argument on other characters.
  static Configuration from_string(std::string_view text);
  /// Bit i of `mask` is x_i. Requires n <= 64.
  static Configuration from_mask(std::size_t n, std::uint64_t mask);

  std::size_t size() const { return bits_.size(); }
  bool operator[](std::size_t i) const { return bits_[i] != 0; }
  void set(std::size_t i, bool value) { bits_[i] = value ? 1 : 0; }
  void flip(std::size_t i) { bits_[i] ^= 1; }

  /// ||x||_1
  std::size_t count() const;
  bool all() const { return count() == size(); }
  std::vector<Node> support() const;
  Configuration complement() const;
  std::string to_string() const;
  /// Bit i of the result is x_i. Requires n <= 64.
  std::uint64_t mask() const;

  /// Lexicographic order of the 0/1 strings.
  friend auto operator<=>(const Configuration&, const Configuration&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

struct NeighborCount {
  std::size_t n0 = 0;
  std::size_t n1 = 0;
  friend bool operator==(const NeighborCount&, const NeighborCount&) = default;
};

enum class BestResponse { only0, only1, both };

const char* to_string(BestResponse br);

// All operations below throw std::out_of_range for a bad node index and
// std::invalid_argument when the configuration length differs from n.

NeighborCount neighbor_counts(const Graph& g, const Configuration& x, Node i);

/// Number of neighbors agreeing with x_i.
std::size_t utility_majority(const Graph& g, const Configuration& x, Node i);
/// Number of neighbors disagreeing with x_i.
std::size_t utility_minority(const Graph& g, const Configuration& x, Node i);

/// Number of edges whose endpoints agree. Exact integer, 0 <= phi <= m.
std::int64_t potential_majority(const Graph& g, const Configuration& x);
std::int64_t potential_minority(const Graph& g, const Configuration& x);

/// Majority-game best response from the counts alone (ties give both).
BestResponse best_response(NeighborCount c);
BestResponse best_response(const Graph& g, const Configuration& x, Node i);

bool is_nash_majority(const Graph& g, const Configuration& x);
bool is_nash_minority(const Graph& g, const Configuration& x);

inline constexpr std::size_t kMaxNashEnumerationNodes = 24;

/// All Nash equilibria of the minority game, in lexicographic order of their
/// 0/1 strings. Throws std::invalid_argument when n > 24.
std::vector<Configuration> enumerate_nash_minority(const Graph& g);

/// Checks the exact-potential identity for one deviation of player i to
/// action `alpha`:  phi(alpha, x_-i) - phi(x) == u_i(alpha, x_-i) - u_i(x).
bool potential_delta_check(const Graph& g, const Configuration& x, Node i, bool alpha);

}  // namespace majctl
