// Acceptance suite: one PASS/FAIL line per criterion; exits 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "brute_force.hpp"
#include "fixtures.hpp"
#include "majctl/cascade.hpp"
#include "majctl/chain.hpp"
#include "majctl/experiment.hpp"
#include "majctl/oracle.hpp"

using namespace majctl;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::size_t choose(std::size_t n, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// --- 1 ---------------------------------------------------------------------
void clique_optimum(Verdict& v) {
  const auto t0 = std::chrono::steady_clock::now();
  std::ostringstream found;
  for (std::size_t k = 3; k <= 9; ++k) {
    const Graph g = gen_clique(k);
    const std::size_t expected = (k + 1) / 2 - 1;  // ceil(k/2) - 1
    const auto opt = exhaustive_optimum(g);
    const auto minimal = enumerate_minimal_sets(g);
    const bool sizes_ok = std::all_of(minimal.begin(), minimal.end(),
                                      [&](const ControlSet& c) { return c.size() == expected; });
    const bool all_listed = minimal.size() == choose(k, expected);
    found << "K" << k << ":opt=" << (opt.size ? std::to_string(*opt.size) : "none")
          << "/expected=" << expected << " ";
    v.require(opt.size == expected, "K" + std::to_string(k) + " optimum");
    v.require(sizes_ok && all_listed, "K" + std::to_string(k) + " minimal sets");
  }
  const double secs = seconds_since(t0);
  v.require(secs < 1.0, "runtime");
  v.detail << found.str() << "(" << secs << " s)";
}

// --- 2 ---------------------------------------------------------------------
void paper_fixtures(Verdict& v) {
  v.require(is_valid(fixtures::tree10(), fixtures::tree10_leaves()), "tree leaves valid");

  const Graph union_graph = fixtures::degree_two_union();
  v.require(is_valid(union_graph, fixtures::degree_two_union_seeds()), "one node per component");
  v.require(is_valid(gen_cycle(3), ControlSet({0})), "triangle single node");
  v.require(is_valid(gen_cycle(5), ControlSet({0})), "C5 single node");
  v.require(is_valid(gen_path(6), ControlSet({2})), "P6 single node");

  const Graph p5 = gen_path(5);
  v.require(is_valid(p5, ControlSet({4})), "P5 endpoint valid");
  v.require(exhaustive_optimum(p5).size == 1u, "P5 optimum 1");

  const Graph star = gen_star(3);
  v.require(is_minimal(star, ControlSet({1, 2})), "star two leaves minimal");
  v.require(exhaustive_optimum(star).size == 1u, "star optimum 1");
  v.require(brute::minimal_sets(star).count(0b0110) == 1, "star minimal (bitmask oracle)");

  const Graph ds = gen_double_star();
  const ControlSet both({double_star::kLeftHub, double_star::kRightHub});
  const ControlSet hub1({double_star::kLeftHub});
  const auto z = enumerate_Z(ds);
  const auto zb = z.find(both.indicator(8));
  const auto zh = z.find(hub1.indicator(8));
  v.require(zb && z.absorbing[*zb], "{hub1,hub2} absorbing");
  v.require(zh && z.absorbing[*zh], "{hub1} absorbing");
  v.require(!is_minimal(ds, both), "{hub1,hub2} not minimal");
  v.require(is_minimal(ds, hub1), "{hub1} minimal");
  v.detail << "tree, degree-2 union, P5, 3-star, double star checked";
}

// --- 3 ---------------------------------------------------------------------
void z_equals_valid(Verdict& v) {
  Rng rng(303);
  std::vector<fixtures::Named> graphs = fixtures::all();
  for (int t = 0; t < 30; ++t) graphs.push_back({"er" + std::to_string(t), fixtures::random_er(rng, 1, 10)});
  std::size_t states = 0;
  for (const auto& [name, g] : graphs) {
    const auto z = enumerate_Z(g);
    std::set<std::uint32_t> supports(z.masks.begin(), z.masks.end());
    std::set<std::uint32_t> valid;
    for (std::uint32_t m = 0; m <= brute::full(g); ++m) {
      if (is_valid(g, ControlSet(brute::members(m)))) valid.insert(m);
    }
    v.require(supports == valid, name + ": Z differs from valid sets");
    if (g.num_nodes() <= 10) {
      const auto table = brute::valid_table(g);
      for (std::uint32_t m = 0; m < table.size(); ++m) {
        v.require(static_cast<bool>(table[m]) == valid.count(m) > 0, name + ": crusade search disagrees");
      }
    }
    states += z.size();
  }
  v.detail << graphs.size() << " graphs, " << states << " states in Z";
}

// --- 4 ---------------------------------------------------------------------
void reversibility(Verdict& v) {
  std::size_t cases = 0;
  double worst_rel = 0.0;
  for (const auto& [name, g] : fixtures::all()) {
    if (g.num_nodes() > 8) continue;
    const auto z = enumerate_Z(g);
    for (const auto& eps : {Rational(1, 10), Rational(1, 5), Rational(1)}) {
      const auto exact = build_transition_matrix(g, z, eps);
      v.require(check_detailed_balance(exact) == Rational(0), name + ": detailed balance");
      const auto tm = build_transition_matrix(g, z, eps.convert_to<double>());
      const double rel = stationary_max_rel_error(stationary_distribution(tm), tm);
      worst_rel = std::max(worst_rel, rel);
      v.require(rel <= 1e-9, name + ": stationary relative error");
      ++cases;
    }
  }

  // Occupancy of a long plain run on P4 against the exact law, with
  // batch-means standard errors for the correlated samples.
  const Graph p4 = gen_path(4);
  const auto z = enumerate_Z(p4);
  const double eps = 0.2;
  const auto tm = build_transition_matrix(p4, z, eps);
  const auto pi = expected_stationary(tm);
  constexpr std::size_t kSteps = 1'000'000;
  constexpr std::size_t kBatches = 100;
  constexpr std::size_t kBatchLen = kSteps / kBatches;
  const std::size_t states = z.size();
  std::vector<std::vector<double>> batch(states, std::vector<double>(kBatches, 0.0));
  Rng rng(404);
  ChainState s = ChainState::top(p4);
  for (std::size_t t = 0; t < kSteps; ++t) {
    zeps_step_plain(p4, s, eps, rng);
    const auto k = z.find(s.x);
    if (!k) {
      v.require(false, "P4 run left Z");
      return;
    }
    batch[*k][t / kBatchLen] += 1.0 / kBatchLen;
  }
  double worst_z = 0.0;
  for (std::size_t k = 0; k < states; ++k) {
    double mean = 0.0;
    for (double f : batch[k]) mean += f;
    mean /= kBatches;
    double var = 0.0;
    for (double f : batch[k]) var += (f - mean) * (f - mean);
    var /= (kBatches - 1);
    const double se = std::sqrt(var / kBatches);
    const double dev = std::abs(mean - pi(static_cast<Eigen::Index>(k)));
    const double zscore = se > 0 ? dev / se : (dev == 0 ? 0.0 : INFINITY);
    worst_z = std::max(worst_z, zscore);
    v.require(zscore <= 3.0, "P4 occupancy of " + z.state(k).to_string());
  }
  v.detail << cases << " (graph, eps) pairs, max rel err " << worst_rel << "; P4 " << states
           << " states, max |dev|/SE " << worst_z;
}

// --- 5 ---------------------------------------------------------------------
void minority_nash(Verdict& v) {
  Rng rng(505);
  std::size_t equilibria = 0;
  for (int t = 0; t < 50; ++t) {
    const Graph g = fixtures::random_er(rng, 1, 10);
    const auto report = minority_nash_report(g);
    v.require(report.all_valid, "a minority equilibrium support is invalid");
    for (brute::Mask x : brute::minority_nash(g)) {
      v.require(brute::valid_by_crusade_search(g, x), "bitmask oracle: invalid equilibrium support");
    }
    v.require(report.nash_count == brute::minority_nash(g).size(), "equilibrium count");
    const auto opt = exhaustive_optimum(g);
    v.require(opt.size && *opt.size <= g.num_nodes() / 2, "optimum exceeds floor(n/2)");
    equilibria += report.nash_count;
  }
  v.detail << "50 graphs, " << equilibria << " minority equilibria";
}

// --- 6 ---------------------------------------------------------------------
void closure_properties(Verdict& v) {
  Rng rng(606);
  std::size_t cases = 0;
  for (int t = 0; t < 1500; ++t) {
    const Graph g = fixtures::random_er(rng, 1, 16, 0.15 + 0.6 * rng.uniform01());
    const std::size_t n = g.num_nodes();
    const ControlSet c = fixtures::random_subset(rng, n, 0.1 + 0.5 * rng.uniform01());
    const Configuration cl = closure(g, c);
    bool extensive = true;
    for (Node i : c.members()) extensive = extensive && cl[i];
    v.require(extensive, "extensivity");
    v.require(closure(g, ControlSet::support_of(cl)) == cl, "idempotence");

    std::vector<Node> more(c.members().begin(), c.members().end());
    more.push_back(static_cast<Node>(rng.uniform_index(n)));
    const Configuration bigger = closure(g, ControlSet(std::move(more)));
    bool monotone = true;
    for (std::size_t i = 0; i < n; ++i) monotone = monotone && (!cl[i] || bigger[i]);
    v.require(monotone, "superset monotonicity");
    for (Node i = 0; i < n; ++i) {
      if (!cl[i]) v.require(!activatable(g, cl, i), "fixpoint has an activatable node");
    }
    ++cases;
  }
  std::size_t orders = 0;
  for (int t = 0; t < 30; ++t) {
    const Graph g = fixtures::random_er(rng, 4, 40, 0.05 + 0.4 * rng.uniform01());
    const ControlSet c = fixtures::random_subset(rng, g.num_nodes(), 0.3);
    const Configuration fifo = closure(g, c);
    for (int k = 0; k < 100; ++k, ++orders) {
      v.require(closure_random_order(g, c, rng) == fifo, "confluence");
    }
  }
  v.require(cases >= 1000, "too few cases");
  v.detail << cases << " property cases, " << orders << " random service orders";
}

// --- 7 ---------------------------------------------------------------------
void dynamics_cross_check(Verdict& v) {
  Rng rng(707);
  std::size_t valid_sets = 0, invalid_sets = 0, trials = 0;
  std::uint64_t slowest = 0;
  while (valid_sets < 20 || invalid_sets < 20) {
    const Graph g = fixtures::random_er(rng, 3, 10);
    const std::size_t n = g.num_nodes();
    const ControlSet c = fixtures::random_subset(rng, n, 0.35);
    if (c.size() == n) continue;
    const bool valid = brute::valid_by_crusade_search(g, static_cast<brute::Mask>(c.indicator(n).mask()));
    if (valid && valid_sets >= 20) continue;
    if (!valid && invalid_sets >= 20) continue;
    const std::uint64_t budget = 10'000 * n;
    for (int t = 0; t < 100; ++t, ++trials) {
      const auto hit = run_controlled(g, c, c.indicator(n), budget, rng);
      if (valid) {
        v.require(hit.has_value(), "valid set missed 1 within 1e4 n steps");
        if (hit) slowest = std::max(slowest, *hit);
      } else {
        v.require(!hit.has_value(), "invalid set reached 1");
      }
    }
    (valid ? valid_sets : invalid_sets) += 1;
  }
  v.detail << valid_sets << " valid and " << invalid_sets << " invalid sets, " << trials
           << " trials, slowest hit " << slowest << " steps";
}

// --- 8 ---------------------------------------------------------------------
void search_quality(Verdict& v) {
  ExperimentConfig config;
  config.er = ExperimentConfig::ErFamily{{12}, 0.5, 5};
  config.runs = 500;
  config.epsilon = 0.2;
  config.variant = Variant::jump;
  config.base_seed = 808;
  config.oracle = true;

  std::ostringstream detail;
  for (const double mult : {100.0, 10'000.0}) {
    config.budget_mult = mult;
    const auto result = run_experiment(config);
    v.require(result.violations.empty(), "soundness violation at budget " + format_double(mult) + "n");
    std::size_t hits = 0, total = 0;
    bool min_matches = true;
    for (std::size_t gi = 0; gi < result.graphs.size(); ++gi) {
      const auto& s = result.graphs[gi];
      if (!s.oracle_optimum) {
        v.require(false, "oracle missing");
        continue;
      }
      min_matches = min_matches && s.min_best_size == *s.oracle_optimum;
      for (const auto& r : result.runs[gi]) {
        hits += r.best_size == *s.oracle_optimum;
        ++total;
      }
    }
    const double frac = static_cast<double>(hits) / static_cast<double>(total);
    const double need = mult == 100.0 ? 0.60 : 0.95;
    if (mult == 100.0) v.require(min_matches, "min over runs differs from optimum");
    v.require(frac >= need, "fraction optimal at budget " + format_double(mult) + "n");
    detail << "budget " << format_double(mult) << "n: optimal " << hits << "/" << total << " ("
           << frac << "), min=opt on all graphs " << (min_matches ? "yes" : "no") << "; ";
  }
  v.detail << detail.str();
}

// --- 9 ---------------------------------------------------------------------
void scaling(Verdict& v) {
  ExperimentConfig config;
  config.er = ExperimentConfig::ErFamily{{10, 15, 20, 25, 30}, 0.5, 20};
  config.runs = 25;
  config.epsilon = 0.2;
  config.budget_mult = 100;
  config.variant = Variant::jump;
  config.base_seed = 909;
  config.oracle = false;
  const auto result = run_experiment(config);
  v.require(result.violations.empty(), "soundness violation");

  std::vector<double> xs, ys;
  for (std::size_t b = 0; b < 5; ++b) {
    double sum = 0.0;
    for (std::size_t k = 0; k < 20; ++k) sum += result.graphs[b * 20 + k].mean_best_size;
    xs.push_back(static_cast<double>(result.graphs[b * 20].n));
    ys.push_back(sum / 20.0);
  }
  for (std::size_t b = 1; b < ys.size(); ++b) v.require(ys[b] > ys[b - 1], "mean best size not increasing");

  const double mx = (xs[0] + xs[1] + xs[2] + xs[3] + xs[4]) / 5.0;
  const double my = (ys[0] + ys[1] + ys[2] + ys[3] + ys[4]) / 5.0;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t b = 0; b < 5; ++b) {
    sxy += (xs[b] - mx) * (ys[b] - my);
    sxx += (xs[b] - mx) * (xs[b] - mx);
    syy += (ys[b] - my) * (ys[b] - my);
  }
  const double r2 = syy > 0 ? sxy * sxy / (sxx * syy) : 1.0;
  v.detail << "mean best size";
  for (std::size_t b = 0; b < 5; ++b) v.detail << " n=" << xs[b] << ":" << ys[b];
  v.detail << "; linear fit R^2 " << r2 << (r2 >= 0.9 ? "" : " (WARNING: below 0.9)");
}

// --- 10 --------------------------------------------------------------------
void never_stuck(Verdict& v) {
  std::size_t visited = 0;
  for (const auto& [name, g] : fixtures::all()) {
    const auto z = enumerate_Z(g);
    try {
      Rng rng(derive_seed(1010, g.num_nodes(), g.num_edges()));
      ChainState s = ChainState::top(g);
      JumpMoves moves(g, s.x);
      for (int t = 0; t < 100'000; ++t) {
        moves.step(g, s, 0.2, rng);
        v.require(z.index.count(static_cast<std::uint32_t>(s.x.mask())) == 1, name + ": left Z");
        ++visited;
      }
      ChainParams params;
      params.budget = 100'000;
      params.seed = 1010;
      SearchOptions options;
      options.check_z = true;
      const auto r = run_search(g, params, options);
      v.require(r.steps_executed == params.budget, name + ": run stopped early");
    } catch (const InvariantViolation& e) {
      v.require(false, name + ": " + e.what());
    }
  }
  v.detail << fixtures::all().size() << " fixtures, " << visited << " states checked against Z";
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    std::function<void(Verdict&)> run;
  };
  const std::vector<Criterion> criteria{
      {1, "clique optimum and minimal sets", clique_optimum},
      {2, "example fixtures", paper_fixtures},
      {3, "Z supports equal valid sets", z_equals_valid},
      {4, "reversibility and stationarity", reversibility},
      {5, "minority equilibria and half bound", minority_nash},
      {6, "closure properties", closure_properties},
      {7, "controlled dynamics cross-check", dynamics_cross_check},
      {8, "search quality at n = 12", search_quality},
      {9, "scaling with n", scaling},
      {10, "never stuck, stays in Z", never_stuck},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Verdict v;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(v);
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    std::printf("AC%-2d %s  %s [%.1f s]: %s\n", c.id, v.pass ? "PASS" : "FAIL", c.title,
                seconds_since(t0), v.detail.str().c_str());
    std::fflush(stdout);
    failed += v.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
