// majctl: command-line front end.
//
//   majctl gen SPEC [--out FILE]
//   majctl solve GRAPH [--seed S --epsilon E --budget-mult M --variant V --trim --check-z]
//   majctl verify GRAPH --set 0,3 [--mode valid|minimal|witness]
//   majctl oracle GRAPH [--epsilon p/q]
//   majctl experiment CONFIG.json [--out DIR]
//
// GRAPH is an edge-list file, or a generator spec when no such file exists.
// Exit codes: 0 ok, 1 usage or input error, 2 verification failure,
// 3 internal invariant violation.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "majctl/cascade.hpp"
#include "majctl/chain.hpp"
#include "majctl/experiment.hpp"
#include "majctl/graph.hpp"
#include "majctl/oracle.hpp"

namespace {

using namespace majctl;

enum Exit : int { kOk = 0, kUsage = 1, kVerifyFailed = 2, kInvariant = 3 };

struct Globals {
  std::uint64_t seed = 0;
  std::string epsilon = "0.2";
  double budget_mult = 100.0;
  std::string variant = "jump";
  bool trim = false;
  bool check_z = false;
  std::string format = "json";
  std::string out;
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty()) return;
    file_.open(path);
    if (!file_) throw std::runtime_error("cannot open '" + path + "' for writing");
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

Graph load_graph(const std::string& source, std::uint64_t seed) {
  if (std::filesystem::is_regular_file(source)) return load_edge_list(source);
  try {
    return generate_from_spec(source, seed).graph;
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("'" + source + "' is neither a readable file nor a graph spec");
  }
}

int cmd_gen(const Globals& g, const std::string& spec) {
  const auto made = generate_from_spec(spec, g.seed);
  Output out(g.out);
  write_edge_list(out.stream(), made.graph);
  if (made.seed) std::cerr << "seed " << *made.seed << '\n';
  return kOk;
}

int cmd_solve(const Globals& gl, const std::string& source) {
  const Graph g = load_graph(source, gl.seed);
  ChainParams params;
  params.epsilon = parse_rational(gl.epsilon).convert_to<double>();
  params.budget = budget_for(gl.budget_mult, g.num_nodes());
  params.variant = parse_variant(gl.variant);
  params.seed = gl.seed;
  params.validate();
  SearchOptions options;
  options.check_z = gl.check_z;
  const RunRecord r = run_search(g, params, options);

  ControlSet best = ControlSet::support_of(r.best_x);
  if (!is_valid(g, best)) throw InvariantViolation("best state is not a valid control set");
  nlohmann::json j = to_json(r);
  if (gl.trim) {
    best = trim_to_minimal(g, best);
    j["trimmed_set"] = best.members();
    j["trimmed_size"] = best.size();
  }

  Output out(gl.out);
  if (gl.format == "csv") {
    out.stream() << csv_header() << '\n' << csv_row(0, r) << '\n';
  } else {
    out.stream() << "best_set " << best.to_string() << '\n' << j.dump() << '\n';
  }
  return kOk;
}

int cmd_verify(const Globals& gl, const std::string& source, const std::string& set_text,
               const std::string& mode) {
  const Graph g = load_graph(source, gl.seed);
  const ControlSet c = ControlSet::parse(set_text);
  (void)c.indicator(g.num_nodes());  // range check

  nlohmann::json j = {{"set", c.members()}, {"mode", mode}};
  bool verdict = false;
  if (mode == "valid") {
    verdict = is_valid(g, c);
  } else if (mode == "minimal") {
    verdict = is_minimal(g, c);
  } else {
    const auto w = crusade_witness(g, c);
    verdict = w.has_value();
    if (w) {
      const auto replay = replay_crusade(g, c, *w);
      if (replay.status != CrusadeStatus::ok) {
        throw InvariantViolation("closure order fails its own replay");
      }
      j["order"] = w->order;
      j["potentials"] = replay.potentials;
    }
  }
  j["verdict"] = verdict;

  Output out(gl.out);
  if (gl.format == "csv") {
    out.stream() << "mode,set,verdict\n" << mode << ",\"" << c.to_string() << "\"," << verdict << '\n';
  } else {
    out.stream() << j.dump() << '\n';
  }
  return verdict ? kOk : kVerifyFailed;
}

int cmd_oracle(const Globals& gl, const std::string& source) {
  const Graph g = load_graph(source, gl.seed);
  const OracleReport report = run_oracle(g, parse_rational(gl.epsilon));
  Output out(gl.out);
  out.stream() << to_json(report).dump(2) << '\n';
  return kOk;
}

int cmd_experiment(const Globals& gl, const CLI::App& app, const std::string& config_path) {
  std::ifstream in(config_path);
  if (!in) throw std::runtime_error("cannot read '" + config_path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("experiment config: ") + e.what());
  }
  ExperimentConfig config = parse_experiment_config(j);
  if (app.count("--seed")) config.base_seed = gl.seed;
  if (app.count("--epsilon")) config.epsilon = parse_rational(gl.epsilon).convert_to<double>();
  if (app.count("--budget-mult")) config.budget_mult = gl.budget_mult;
  if (app.count("--variant")) config.variant = parse_variant(gl.variant);
  if (gl.check_z) config.check_z = true;

  const ExperimentResult result = run_experiment(config);
  nlohmann::json summary = result.summary();
  summary["config"] = to_json(config);

  if (!gl.out.empty()) {
    const std::filesystem::path dir(gl.out);
    std::filesystem::create_directories(dir);
    std::ofstream csv(dir / "runs.csv");
    std::ofstream js(dir / "summary.json");
    if (!csv || !js) throw std::runtime_error("cannot write into '" + gl.out + "'");
    csv << result.csv();
    js << summary.dump(2) << '\n';
  } else if (gl.format == "csv") {
    std::cout << result.csv();
  } else {
    std::cout << summary.dump(2) << '\n';
  }
  for (const auto& v : result.violations) std::cerr << "violation: " << v << '\n';
  return result.violations.empty() ? kOk : kInvariant;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimum sufficient control sets in majority games"};
  app.require_subcommand(1);
  Globals gl;
  app.add_option("--seed", gl.seed, "RNG seed (base seed for experiments)");
  app.add_option("--epsilon", gl.epsilon, "Up-move weight in (0, 1]; p/q or decimal");
  app.add_option("--budget-mult", gl.budget_mult, "Step budget as a multiple of n")
      ->check(CLI::PositiveNumber);
  app.add_option("--variant", gl.variant, "Chain variant")->check(CLI::IsMember({"plain", "jump"}));
  app.add_flag("--trim", gl.trim, "Trim the best set to a minimal one");
  app.add_flag("--check-z", gl.check_z, "Check Z membership of every visited state");
  app.add_option("--format", gl.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", gl.out, "Output file (experiment: output directory)");

  std::string spec, graph, set_text, mode = "valid", config;
  auto* gen = app.add_subcommand("gen", "Write a generated graph as an edge list");
  gen->add_option("spec", spec, "clique:K path:N cycle:N star:L doublestar er:N:P[:seed=S] tree:N[:seed=S]")
      ->required();
  auto* solve = app.add_subcommand("solve", "Search for a small control set");
  solve->add_option("graph", graph, "Edge-list file or generator spec")->required();
  auto* verify = app.add_subcommand("verify", "Check a control set");
  verify->add_option("graph", graph, "Edge-list file or generator spec")->required();
  verify->add_option("--set", set_text, "Node ids, e.g. 0,3,5")->required();
  verify->add_option("--mode", mode, "valid | minimal | witness")
      ->check(CLI::IsMember({"valid", "minimal", "witness"}));
  auto* oracle = app.add_subcommand("oracle", "Exhaustive ground truth for a small graph");
  oracle->add_option("graph", graph, "Edge-list file or generator spec")->required();
  auto* experiment = app.add_subcommand("experiment", "Run a batch experiment from a JSON config");
  experiment->add_option("config", config, "JSON config file")->required();
  for (auto* sub : {gen, solve, verify, oracle, experiment}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gen) return cmd_gen(gl, spec);
    if (*solve) return cmd_solve(gl, graph);
    if (*verify) return cmd_verify(gl, graph, set_text, mode);
    if (*oracle) return cmd_oracle(gl, graph);
    if (*experiment) return cmd_experiment(gl, app, config);
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return kInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
