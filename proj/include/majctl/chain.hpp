#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "majctl/cascade.hpp"
#include "majctl/game.hpp"
#include "majctl/graph.hpp"
#include "majctl/random.hpp"

namespace majctl {

/// Raised when an internal invariant of the dynamics breaks (stuck jump
/// chain, stale caches, a visited state outside Z).
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// plain: uniform node activation with self-loops.
/// jump: self-loops removed, feasible moves drawn by weight (1 down, eps up).
enum class Variant { plain, jump };

const char* to_string(Variant v);
/// Throws std::invalid_argument for anything but "plain" / "jump".
Variant parse_variant(std::string_view text);

struct ChainParams {
  double epsilon = 0.2;
  std::uint64_t budget = 0;
  Variant variant = Variant::jump;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument unless 0 < epsilon <= 1.
  void validate() const;
};

struct ChainState {
  Configuration x;
  std::uint64_t step = 0;
  std::int64_t phi = 0;   // potential_majority(x)
  std::size_t ones = 0;   // ||x||_1

  static ChainState at(const Graph& g, Configuration x);
  static ChainState top(const Graph& g) { return at(g, Configuration::ones(g.num_nodes())); }

  /// Cached phi and ones agree with a recomputation.
  bool coherent(const Graph& g) const;
};

/// One step of the search chain with self-loops: a uniform node i is
/// activated; if it has fewer 1-neighbors than 0-neighbors nothing happens,
/// otherwise a 1 drops to 0 surely and a 0 rises to 1 with probability eps.
void zeps_step_plain(const Graph& g, ChainState& s, double epsilon, Rng& rng);

/// Feasible-move sets of the jump variant, maintained incrementally.
/// down: 1-nodes with n1 >= n0 (weight 1); up: 0-nodes with n1 >= n0
/// (weight eps).
class JumpMoves {
 public:
  JumpMoves(const Graph& g, const Configuration& x);

  std::span<const Node> down() const { return down_; }
  std::span<const Node> up() const { return up_; }

  /// Draws and applies one feasible flip. Throws InvariantViolation when no
  /// move is feasible.
  void step(const Graph& g, ChainState& s, double epsilon, Rng& rng);

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  void refresh(const Graph& g, const Configuration& x, Node i);
  void erase(Node i);

  std::vector<std::size_t> ones_;
  std::vector<Node> down_;
  std::vector<Node> up_;
  std::vector<std::size_t> pos_;
};

/// One jump-variant step from scratch (rebuilds the move sets, O(n + m)).
void zeps_step_jump(const Graph& g, ChainState& s, double epsilon, Rng& rng);

struct RunRecord {
  Configuration best_x;
  std::size_t best_size = 0;
  std::uint64_t steps_executed = 0;
  std::uint64_t step_of_best = 0;
  Configuration final_x;
  double mean_size = 0.0;  // average ||x||_1 over the visited states
  ChainParams params;
  std::size_t n = 0;
  std::size_t m = 0;
  std::string graph_digest;
};

struct SearchOptions {
  /// Verify is_in_Z on every visited state (O(n + m) per step).
  bool check_z = false;
  /// Recompute the cached potential every this many steps (0 disables).
  std::uint64_t coherence_interval = 1000;
};

/// Runs the selected chain from x = 1 for params.budget steps, keeping the
/// first state of smallest support seen. Deterministic in (g, params).
RunRecord run_search(const Graph& g, const ChainParams& params, const SearchOptions& options = {});

/// Asynchronous best-response step with the nodes of `frozen` pinned at 1.
/// A uniform node revises to a uniform element of its best-response set.
/// Throws std::invalid_argument if a frozen node is at 0.
void best_response_step(const Graph& g, ChainState& s, const ControlSet& frozen, Rng& rng);

/// Simulates controlled best-response dynamics from x0 until x = 1. Returns
/// the hitting step, or nullopt when max_steps ran out (exhaustion, not a
/// proof of insufficiency).
std::optional<std::uint64_t> run_controlled(const Graph& g, const ControlSet& c,
                                            const Configuration& x0, std::uint64_t max_steps,
                                            Rng& rng);

/// Fraction of `trials` controlled runs from 1_C that hit 1 within `budget`
/// steps. Trial t uses seed derive_seed(seed, t, 0). Throws on trials == 0.
double empirical_sufficiency(const Graph& g, const ControlSet& c, std::size_t trials,
                             std::uint64_t budget, std::uint64_t seed);

nlohmann::json to_json(const RunRecord& r);
std::string csv_header();
std::string csv_row(std::uint64_t run_id, const RunRecord& r);
/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

}  // namespace majctl
