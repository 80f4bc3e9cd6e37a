#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "majctl/chain.hpp"
#include "majctl/graph.hpp"

namespace majctl {

struct GeneratedGraph {
  Graph graph;
  /// Seed actually used, for the random families.
  std::optional<std::uint64_t> seed;
};

/// Builds a graph from a generator spec:
///   clique:K  path:N  cycle:N  star:LEAVES  doublestar
///   er:N:P[:seed=S]  tree:N[:seed=S]
/// Random families without an explicit seed use `fallback_seed`.
/// Throws std::invalid_argument on a malformed spec.
GeneratedGraph generate_from_spec(std::string_view spec, std::uint64_t fallback_seed = 0);

/// Harness configuration, read from JSON:
///   {
///     "graphs": {"er": {"n": [8, 10], "p": 0.5, "count": 5},
///                "specs": ["clique:5"], "files": ["g.txt"]},
///     "runs": 50, "epsilon": 0.2, "budget_mult": 100, "variant": "jump",
///     "base_seed": 1, "oracle": true, "check_z": false, "threads": 0
///   }
/// Graph i of the ER family is generated with derive_seed(base_seed, i, ~0);
/// run r on graph i uses derive_seed(base_seed, i, r).
struct ExperimentConfig {
  struct ErFamily {
    std::vector<std::size_t> sizes;
    double p = 0.5;
    std::size_t count = 1;
  };

  std::optional<ErFamily> er;
  std::vector<std::string> specs;
  std::vector<std::string> files;
  std::size_t runs = 1;
  double epsilon = 0.2;
  double budget_mult = 100.0;
  Variant variant = Variant::jump;
  std::uint64_t base_seed = 0;
  bool oracle = true;
  bool check_z = false;
  /// 0 picks std::thread::hardware_concurrency().
  std::size_t threads = 0;

  /// Throws std::invalid_argument unless runs >= 1, budget_mult > 0,
  /// epsilon in (0, 1] and at least one graph source is given.
  void validate() const;
};

ExperimentConfig parse_experiment_config(const nlohmann::json& j);
nlohmann::json to_json(const ExperimentConfig& c);

struct GraphSummary {
  std::size_t graph_index = 0;
  std::string label;
  std::size_t n = 0;
  std::size_t m = 0;
  std::string digest;
  std::optional<std::size_t> oracle_optimum;
  double mean_best_size = 0.0;
  std::size_t min_best_size = 0;
  std::size_t max_best_size = 0;
  double mean_final_size = 0.0;
  std::optional<double> fraction_optimal;
};

struct ExperimentResult {
  std::vector<GraphSummary> graphs;
  /// runs[g][r]: record of run r on graph g.
  std::vector<std::vector<RunRecord>> runs;
  /// Soundness or invariant violations (best set invalid, best below the
  /// oracle optimum, visited state outside Z, stuck chain).
  std::vector<std::string> violations;

  std::string csv() const;
  nlohmann::json summary() const;
};

/// Runs every (graph, run) pair on a worker pool. Results are merged in
/// (graph_index, run_index) order, so outputs do not depend on scheduling.
ExperimentResult run_experiment(const ExperimentConfig& config);

std::uint64_t budget_for(double multiplier, std::size_t n);

}  // namespace majctl
