#include "majctl/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

#include "majctl/cascade.hpp"
#include "majctl/oracle.hpp"
#include "majctl/random.hpp"

namespace majctl {

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto k = s.find(sep, start);
    parts.push_back(s.substr(start, k - start));
    if (k == std::string_view::npos) break;
    start = k + 1;
  }
  return parts;
}

template <typename T>
T parse_number(std::string_view text, std::string_view spec) {
  T value{};
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw std::invalid_argument("bad number '" + std::string(text) + "' in graph spec '" +
                                std::string(spec) + "'");
  }
  return value;
}

std::uint64_t parse_seed_field(std::string_view field, std::string_view spec) {
  constexpr std::string_view prefix = "seed=";
  if (!field.starts_with(prefix)) {
    throw std::invalid_argument("expected seed=S in graph spec '" + std::string(spec) + "'");
  }
  return parse_number<std::uint64_t>(field.substr(prefix.size()), spec);
}

}  // namespace

GeneratedGraph generate_from_spec(std::string_view spec, std::uint64_t fallback_seed) {
  const auto parts = split(spec, ':');
  const auto kind = parts[0];
  const auto arity = [&](std::size_t lo, std::size_t hi) {
    if (parts.size() < lo || parts.size() > hi) {
      throw std::invalid_argument("wrong number of fields in graph spec '" + std::string(spec) + "'");
    }
  };
  const auto size_at = [&](std::size_t k) { return parse_number<std::size_t>(parts[k], spec); };

  if (kind == "clique") {
    arity(2, 2);
    return {gen_clique(size_at(1)), std::nullopt};
  }
  if (kind == "path") {
    arity(2, 2);
    return {gen_path(size_at(1)), std::nullopt};
  }
  if (kind == "cycle") {
    arity(2, 2);
    return {gen_cycle(size_at(1)), std::nullopt};
  }
  if (kind == "star") {
    arity(2, 2);
    return {gen_star(size_at(1)), std::nullopt};
  }
  if (kind == "doublestar") {
    arity(1, 1);
    return {gen_double_star(), std::nullopt};
  }
  if (kind == "er") {
    arity(3, 4);
    const double p = parse_number<double>(parts[2], spec);
    const auto seed = parts.size() == 4 ? parse_seed_field(parts[3], spec) : fallback_seed;
    return {gen_erdos_renyi(size_at(1), p, seed), seed};
  }
  if (kind == "tree") {
    arity(2, 3);
    const auto seed = parts.size() == 3 ? parse_seed_field(parts[2], spec) : fallback_seed;
    return {gen_random_tree(size_at(1), seed), seed};
  }
  throw std::invalid_argument("unknown graph family in spec '" + std::string(spec) + "'");
}

void ExperimentConfig::validate() const {
  if (runs < 1) throw std::invalid_argument("runs must be >= 1");
  if (!(budget_mult > 0.0)) throw std::invalid_argument("budget_mult must be > 0");
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1]");
  if (er) {
    if (er->sizes.empty() || er->count < 1) throw std::invalid_argument("er family needs sizes and count >= 1");
    if (!(er->p >= 0.0 && er->p <= 1.0)) throw std::invalid_argument("er p must lie in [0, 1]");
  }
  if (!er && specs.empty() && files.empty()) throw std::invalid_argument("no graphs configured");
}

ExperimentConfig parse_experiment_config(const nlohmann::json& j) {
  ExperimentConfig c;
  try {
    if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
    const auto& graphs = j.at("graphs");
    if (graphs.contains("er")) {
      const auto& er = graphs.at("er");
      ExperimentConfig::ErFamily fam;
      if (er.at("n").is_array()) {
        fam.sizes = er.at("n").get<std::vector<std::size_t>>();
      } else {
        fam.sizes = {er.at("n").get<std::size_t>()};
      }
      fam.p = er.value("p", 0.5);
      fam.count = er.value("count", std::size_t{1});
      c.er = fam;
    }
    c.specs = graphs.value("specs", std::vector<std::string>{});
    c.files = graphs.value("files", std::vector<std::string>{});
    c.runs = j.value("runs", c.runs);
    c.epsilon = j.value("epsilon", c.epsilon);
    c.budget_mult = j.value("budget_mult", c.budget_mult);
    c.variant = parse_variant(j.value("variant", std::string(to_string(c.variant))));
    c.base_seed = j.value("base_seed", c.base_seed);
    c.oracle = j.value("oracle", c.oracle);
    c.check_z = j.value("check_z", c.check_z);
    c.threads = j.value("threads", c.threads);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("experiment config: ") + e.what());
  }
  c.validate();
  return c;
}

nlohmann::json to_json(const ExperimentConfig& c) {
  nlohmann::json graphs = nlohmann::json::object();
  if (c.er) graphs["er"] = {{"n", c.er->sizes}, {"p", c.er->p}, {"count", c.er->count}};
  if (!c.specs.empty()) graphs["specs"] = c.specs;
  if (!c.files.empty()) graphs["files"] = c.files;
  return {{"graphs", graphs},      {"runs", c.runs},         {"epsilon", c.epsilon},
          {"budget_mult", c.budget_mult}, {"variant", to_string(c.variant)},
          {"base_seed", c.base_seed}, {"oracle", c.oracle},   {"check_z", c.check_z}};
}

std::uint64_t budget_for(double multiplier, std::size_t n) {
  return static_cast<std::uint64_t>(std::llround(multiplier * static_cast<double>(n)));
}

namespace {

struct GraphInput {
  std::string label;
  Graph graph;
};

std::vector<GraphInput> collect_graphs(const ExperimentConfig& config) {
  std::vector<GraphInput> out;
  if (config.er) {
    for (std::size_t n : config.er->sizes) {
      for (std::size_t k = 0; k < config.er->count; ++k) {
        const std::uint64_t seed = derive_seed(config.base_seed, out.size(), ~std::uint64_t{0});
        std::ostringstream label;
        label << "er:" << n << ':' << format_double(config.er->p) << ":seed=" << seed;
        out.push_back({label.str(), gen_erdos_renyi(n, config.er->p, seed)});
      }
    }
  }
  for (const auto& spec : config.specs) {
    const std::uint64_t seed = derive_seed(config.base_seed, out.size(), ~std::uint64_t{0});
    out.push_back({spec, generate_from_spec(spec, seed).graph});
  }
  for (const auto& file : config.files) out.push_back({file, load_edge_list(file)});
  return out;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  const auto inputs = collect_graphs(config);
  const std::size_t runs = config.runs;

  ExperimentResult result;
  result.runs.assign(inputs.size(), std::vector<RunRecord>(runs));
  std::vector<std::optional<std::size_t>> optimum(inputs.size());
  if (config.oracle) {
    for (std::size_t gi = 0; gi < inputs.size(); ++gi) {
      if (inputs[gi].graph.num_nodes() <= kMaxExhaustiveNodes) {
        optimum[gi] = exhaustive_optimum(inputs[gi].graph).size;
      }
    }
  }

  const std::size_t tasks = inputs.size() * runs;
  std::vector<std::string> task_error(tasks);
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t t = next++; t < tasks; t = next++) {
      const std::size_t gi = t / runs;
      const std::size_t ri = t % runs;
      const Graph& g = inputs[gi].graph;
      ChainParams params;
      params.epsilon = config.epsilon;
      params.budget = budget_for(config.budget_mult, g.num_nodes());
      params.variant = config.variant;
      params.seed = derive_seed(config.base_seed, gi, ri);
      SearchOptions options;
      options.check_z = config.check_z;
      try {
        result.runs[gi][ri] = run_search(g, params, options);
      } catch (const std::exception& e) {
        task_error[t] = e.what();
      }
    }
  };
  std::size_t threads = config.threads ? config.threads : std::thread::hardware_concurrency();
  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(tasks, 1));
  std::vector<std::thread> pool;
  for (std::size_t k = 1; k < threads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  for (std::size_t gi = 0; gi < inputs.size(); ++gi) {
    const Graph& g = inputs[gi].graph;
    GraphSummary s;
    s.graph_index = gi;
    s.label = inputs[gi].label;
    s.n = g.num_nodes();
    s.m = g.num_edges();
    s.digest = digest(g);
    s.oracle_optimum = optimum[gi];
    s.min_best_size = g.num_nodes();
    double best_sum = 0.0;
    double final_sum = 0.0;
    std::size_t hits = 0;
    for (std::size_t ri = 0; ri < runs; ++ri) {
      const std::string where = "graph " + std::to_string(gi) + " run " + std::to_string(ri) + ": ";
      if (!task_error[gi * runs + ri].empty()) {
        result.violations.push_back(where + task_error[gi * runs + ri]);
        continue;
      }
      const RunRecord& r = result.runs[gi][ri];
      if (!is_valid(g, ControlSet::support_of(r.best_x))) {
        result.violations.push_back(where + "best set is not a valid control set");
      }
      if (optimum[gi] && r.best_size < *optimum[gi]) {
        result.violations.push_back(where + "best size below the exhaustive optimum");
      }
      if (optimum[gi] && r.best_size == *optimum[gi]) ++hits;
      best_sum += static_cast<double>(r.best_size);
      final_sum += static_cast<double>(r.final_x.count());
      s.min_best_size = std::min(s.min_best_size, r.best_size);
      s.max_best_size = std::max(s.max_best_size, r.best_size);
    }
    s.mean_best_size = best_sum / static_cast<double>(runs);
    s.mean_final_size = final_sum / static_cast<double>(runs);
    if (optimum[gi]) s.fraction_optimal = static_cast<double>(hits) / static_cast<double>(runs);
    result.graphs.push_back(std::move(s));
  }
  return result;
}

std::string ExperimentResult::csv() const {
  std::string out = "graph_index," + csv_header() + '\n';
  for (std::size_t gi = 0; gi < runs.size(); ++gi) {
    for (std::size_t ri = 0; ri < runs[gi].size(); ++ri) {
      out += std::to_string(gi) + ',' + csv_row(ri, runs[gi][ri]) + '\n';
    }
  }
  return out;
}

nlohmann::json ExperimentResult::summary() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& s : graphs) {
    nlohmann::json row = {
        {"graph_index", s.graph_index},   {"label", s.label},
        {"n", s.n},                       {"m", s.m},
        {"digest", s.digest},             {"mean_best_size", s.mean_best_size},
        {"min_best_size", s.min_best_size}, {"max_best_size", s.max_best_size},
        {"mean_final_size", s.mean_final_size},
    };
    row["oracle_optimum"] = s.oracle_optimum ? nlohmann::json(*s.oracle_optimum) : nlohmann::json(nullptr);
    row["fraction_optimal"] =
        s.fraction_optimal ? nlohmann::json(*s.fraction_optimal) : nlohmann::json(nullptr);
    rows.push_back(std::move(row));
  }
  return {{"graphs", rows}, {"violations", violations}};
}

}  // namespace majctl
