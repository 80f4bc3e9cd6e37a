#include "majctl/game.hpp"

#include <algorithm>
#include <stdexcept>

namespace majctl {

namespace {

void check_args(const Graph& g, const Configuration& x) {
  if (x.size() != g.num_nodes()) {
    throw std::invalid_argument("configuration length " + std::to_string(x.size()) +
                                " does not match graph size " + std::to_string(g.num_nodes()));
  }
}

void check_args(const Graph& g, const Configuration& x, Node i) {
  check_args(g, x);
  if (i >= g.num_nodes()) throw std::out_of_range("node " + std::to_string(i) + " out of range");
}

NeighborCount count_unchecked(const Graph& g, const Configuration& x, Node i) {
  NeighborCount c;
  for (Node j : g.neighbors(i)) {
    if (x[j]) {
      ++c.n1;
    } else {
      ++c.n0;
    }
  }
  return c;
}

bool in_best_response(BestResponse br, bool action) {
  return br == BestResponse::both || (action ? br == BestResponse::only1 : br == BestResponse::only0);
}

}  // namespace

Configuration Configuration::indicator(std::size_t n, std::span<const Node> nodes) {
  Configuration x(n);
  for (Node i : nodes) {
    if (i >= n) throw std::out_of_range("node " + std::to_string(i) + " out of range");
    x.set(i, true);
  }
  return x;
}

Configuration Configuration::from_string(std::string_view text) {
  Configuration x(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1') {
      x.set(i, true);
    } else if (text[i] != '0') {
      throw std::invalid_argument("configuration strings may only contain 0 and 1");
    }
  }
  return x;
}

Configuration Configuration::from_mask(std::size_t n, std::uint64_t mask) {
  if (n > 64) throw std::invalid_argument("mask form needs n <= 64");
  Configuration x(n);
  for (std::size_t i = 0; i < n; ++i) x.set(i, (mask >> i) & 1U);
  return x;
}

std::size_t Configuration::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

std::vector<Node> Configuration::support() const {
  std::vector<Node> s;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) s.push_back(static_cast<Node>(i));
  }
  return s;
}

Configuration Configuration::complement() const {
  Configuration y = *this;
  for (auto& b : y.bits_) b ^= 1;
  return y;
}

std::string Configuration::to_string() const {
  std::string s(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) s[i] = '1';
  }
  return s;
}

std::uint64_t Configuration::mask() const {
  if (bits_.size() > 64) throw std::invalid_argument("mask form needs n <= 64");
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) m |= std::uint64_t{1} << i;
  }
  return m;
}

const char* to_string(BestResponse br) {
  switch (br) {
    case BestResponse::only0: return "only0";
    case BestResponse::only1: return "only1";
    case BestResponse::both: return "both";
  }
  return "?";
}

NeighborCount neighbor_counts(const Graph& g, const Configuration& x, Node i) {
  check_args(g, x, i);
  return count_unchecked(g, x, i);
}

std::size_t utility_majority(const Graph& g, const Configuration& x, Node i) {
  const auto c = neighbor_counts(g, x, i);
  return x[i] ? c.n1 : c.n0;
}

std::size_t utility_minority(const Graph& g, const Configuration& x, Node i) {
  return g.degree(i) - utility_majority(g, x, i);
}

std::int64_t potential_majority(const Graph& g, const Configuration& x) {
  check_args(g, x);
  std::int64_t agree = 0;
  for (auto [u, v] : g.edges()) {
    if (x[u] == x[v]) ++agree;
  }
  return agree;
}

std::int64_t potential_minority(const Graph& g, const Configuration& x) {
  return -potential_majority(g, x);
}

BestResponse best_response(NeighborCount c) {
  if (c.n0 > c.n1) return BestResponse::only0;
  if (c.n0 < c.n1) return BestResponse::only1;
  return BestResponse::both;
}

BestResponse best_response(const Graph& g, const Configuration& x, Node i) {
  return best_response(neighbor_counts(g, x, i));
}

bool is_nash_majority(const Graph& g, const Configuration& x) {
  check_args(g, x);
  for (Node i = 0; i < g.num_nodes(); ++i) {
    if (!in_best_response(best_response(count_unchecked(g, x, i)), x[i])) return false;
  }
  return true;
}

bool is_nash_minority(const Graph& g, const Configuration& x) {
  check_args(g, x);
  // The minority best response is the majority one with the actions swapped.
  for (Node i = 0; i < g.num_nodes(); ++i) {
    if (!in_best_response(best_response(count_unchecked(g, x, i)), !x[i])) return false;
  }
  return true;
}

std::vector<Configuration> enumerate_nash_minority(const Graph& g) {
  const std::size_t n = g.num_nodes();
  if (n > kMaxNashEnumerationNodes) {
    throw std::invalid_argument("exhaustive Nash enumeration limited to n <= 24");
  }
  std::vector<Configuration> out;
  Configuration x(n);
  // Counting k upward with node 0 as the most significant bit walks the
  // 0/1 strings in lexicographic order.
  for (std::uint64_t k = 0; k < (std::uint64_t{1} << n); ++k) {
    for (std::size_t i = 0; i < n; ++i) x.set(i, (k >> (n - 1 - i)) & 1U);
    if (is_nash_minority(g, x)) out.push_back(x);
  }
  return out;
}

bool potential_delta_check(const Graph& g, const Configuration& x, Node i, bool alpha) {
  Configuration y = x;
  y.set(i, alpha);
  const auto dphi = potential_majority(g, y) - potential_majority(g, x);
  const auto du = static_cast<std::int64_t>(utility_majority(g, y, i)) -
                  static_cast<std::int64_t>(utility_majority(g, x, i));
  return dphi == du;
}

}  // namespace majctl
