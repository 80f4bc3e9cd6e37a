#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "majctl/game.hpp"
#include "majctl/graph.hpp"

namespace majctl {

class Rng;

/// Set of players pinned to action 1. Members are kept sorted and unique.
class ControlSet {
 public:
  ControlSet() = default;
  explicit ControlSet(std::vector<Node> members);

  static ControlSet all(std::size_t n);
  static ControlSet support_of(const Configuration& x) { return ControlSet(x.support()); }
  /// Parses "0,3,5" (also accepts whitespace separators; empty text is the
  /// empty set). Throws std::invalid_argument on malformed input.
  static ControlSet parse(const std::string& text);

  std::span<const Node> members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(Node i) const;

  /// 1_C over n nodes. Throws std::out_of_range when a member is >= n.
  Configuration indicator(std::size_t n) const;
  std::string to_string() const;

  friend auto operator<=>(const ControlSet&, const ControlSet&) = default;

 private:
  std::vector<Node> members_;
};

/// Activation order of the uncontrolled nodes, i_1, ..., i_m.
struct CrusadeWitness {
  std::vector<Node> order;
};

/// True iff node i has at least as many 1-neighbors as 0-neighbors under x.
bool activatable(const Graph& g, const Configuration& x, Node i);

/// Contagion closure of c: the least superset T of c such that no node
/// outside T is activatable under 1_T. Linear time (FIFO worklist with
/// per-node counters). Returned as the indicator 1_T.
Configuration closure(const Graph& g, const ControlSet& c);

/// Same fixpoint, serving the worklist in random order. Used to exercise
/// confluence; the result must equal closure(g, c).
Configuration closure_random_order(const Graph& g, const ControlSet& c, Rng& rng);

/// closure(g, c) covers every node.
bool is_valid(const Graph& g, const ControlSet& c);

/// Activation order of the FIFO closure, or nullopt when c is not valid.
std::optional<CrusadeWitness> crusade_witness(const Graph& g, const ControlSet& c);

enum class CrusadeStatus {
  ok,
  node_out_of_range,
  node_in_control_set,
  repeated_node,
  wrong_length,
  potential_decrease,
};

const char* to_string(CrusadeStatus s);

struct CrusadeReplay {
  CrusadeStatus status = CrusadeStatus::ok;
  /// Majority potential of x^0, x^1, ... up to the last replayed state.
  std::vector<std::int64_t> potentials;
  /// Offending position in the order, when status != ok.
  std::optional<std::size_t> failed_at;
};

/// Replays x^0 = 1_C, x^{k+1} = x^k + delta_{i_k} from scratch, checking the
/// witness shape and that the majority potential never decreases. Shape
/// errors are reported separately from a potential decrease.
CrusadeReplay replay_crusade(const Graph& g, const ControlSet& c, const CrusadeWitness& w);

bool verify_crusade(const Graph& g, const ControlSet& c, const CrusadeWitness& w);

/// Valid, and no single-element deletion is valid. By superset
/// monotonicity this rules out every strict subset.
bool is_minimal(const Graph& g, const ControlSet& c);

/// Greedy deletion in ascending node-id order, restarting after each
/// successful removal. Throws std::invalid_argument if c is not valid.
ControlSet trim_to_minimal(const Graph& g, const ControlSet& c);

/// x lies in the reachable set of the downward chain from 1, i.e. its
/// support is a valid control set.
bool is_in_Z(const Graph& g, const Configuration& x);

/// x is in Z and no 1-node of x is activatable, so no downward move exists.
bool is_absorbing_Z0(const Graph& g, const Configuration& x);

}  // namespace majctl
