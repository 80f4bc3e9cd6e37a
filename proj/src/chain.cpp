#include "majctl/chain.hpp"

#include <charconv>

namespace majctl {

namespace {

NeighborCount count_ones(const Graph& g, const Configuration& x, Node i) {
  NeighborCount c;
  for (Node j : g.neighbors(i)) {
    if (x[j]) ++c.n1;
  }
  c.n0 = g.degree(i) - c.n1;
  return c;
}

/// Flips x_i and updates the caches; the potential change follows from the
/// counts at i taken before the flip.
void apply_flip(ChainState& s, Node i, NeighborCount c) {
  const auto n0 = static_cast<std::int64_t>(c.n0);
  const auto n1 = static_cast<std::int64_t>(c.n1);
  if (s.x[i]) {
    s.phi += n0 - n1;
    --s.ones;
  } else {
    s.phi += n1 - n0;
    ++s.ones;
  }
  s.x.flip(i);
}

void br_step(const Graph& g, ChainState& s, const std::vector<std::uint8_t>& frozen, Rng& rng) {
  const auto i = static_cast<Node>(rng.uniform_index(g.num_nodes()));
  ++s.step;
  if (frozen[i]) return;
  const auto c = count_ones(g, s.x, i);
  bool target = false;
  switch (best_response(c)) {
    case BestResponse::only0: target = false; break;
    case BestResponse::only1: target = true; break;
    case BestResponse::both: target = rng.coin(); break;
  }
  if (target != s.x[i]) apply_flip(s, i, c);
}

std::vector<std::uint8_t> frozen_mask(const Graph& g, const ControlSet& frozen,
                                      const Configuration& x) {
  std::vector<std::uint8_t> mask(g.num_nodes(), 0);
  for (Node i : frozen.members()) {
    if (i >= g.num_nodes()) throw std::out_of_range("control node out of range");
    if (!x[i]) throw std::invalid_argument("controlled node " + std::to_string(i) + " is not at 1");
    mask[i] = 1;
  }
  return mask;
}

}  // namespace

const char* to_string(Variant v) { return v == Variant::plain ? "plain" : "jump"; }

Variant parse_variant(std::string_view text) {
  if (text == "plain") return Variant::plain;
  if (text == "jump") return Variant::jump;
  throw std::invalid_argument("unknown chain variant '" + std::string(text) + "'");
}

void ChainParams::validate() const {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("epsilon must lie in (0, 1]");
  }
}

ChainState ChainState::at(const Graph& g, Configuration x) {
  ChainState s;
  s.phi = potential_majority(g, x);
  s.ones = x.count();
  s.x = std::move(x);
  return s;
}

bool ChainState::coherent(const Graph& g) const {
  return phi == potential_majority(g, x) && ones == x.count();
}

void zeps_step_plain(const Graph& g, ChainState& s, double epsilon, Rng& rng) {
  const auto i = static_cast<Node>(rng.uniform_index(g.num_nodes()));
  ++s.step;
  const auto c = count_ones(g, s.x, i);
  if (c.n1 < c.n0) return;
  if (s.x[i] || rng.bernoulli(epsilon)) apply_flip(s, i, c);
}

JumpMoves::JumpMoves(const Graph& g, const Configuration& x)
    : ones_(g.num_nodes(), 0), pos_(g.num_nodes(), npos) {
  for (Node i = 0; i < g.num_nodes(); ++i) {
    ones_[i] = count_ones(g, x, i).n1;
    refresh(g, x, i);
  }
}

void JumpMoves::erase(Node i) {
  if (pos_[i] == npos) return;
  auto& list = (pos_[i] & 1) ? up_ : down_;
  const std::size_t k = pos_[i] >> 1;
  const Node last = list.back();
  list[k] = last;
  pos_[last] = (k << 1) | (pos_[i] & 1);
  list.pop_back();
  pos_[i] = npos;
}

// pos_[i] packs (index << 1) | (1 if in up_, 0 if in down_).
void JumpMoves::refresh(const Graph& g, const Configuration& x, Node i) {
  erase(i);
  if (2 * ones_[i] < g.degree(i)) return;
  if (x[i]) {
    pos_[i] = down_.size() << 1;
    down_.push_back(i);
  } else {
    pos_[i] = (up_.size() << 1) | 1;
    up_.push_back(i);
  }
}

void JumpMoves::step(const Graph& g, ChainState& s, double epsilon, Rng& rng) {
  if (down_.empty() && up_.empty()) {
    throw InvariantViolation("jump chain has no feasible move at " + s.x.to_string());
  }
  const double down_weight = static_cast<double>(down_.size());
  const double total = down_weight + epsilon * static_cast<double>(up_.size());
  Node i;
  if (up_.empty() || (!down_.empty() && rng.uniform01() * total < down_weight)) {
    i = down_[rng.uniform_index(down_.size())];
  } else {
    i = up_[rng.uniform_index(up_.size())];
  }

  const NeighborCount c{g.degree(i) - ones_[i], ones_[i]};
  const bool rising = !s.x[i];
  apply_flip(s, i, c);
  ++s.step;
  for (Node j : g.neighbors(i)) {
    if (rising) {
      ++ones_[j];
    } else {
      --ones_[j];
    }
    refresh(g, s.x, j);
  }
  refresh(g, s.x, i);
}

void zeps_step_jump(const Graph& g, ChainState& s, double epsilon, Rng& rng) {
  JumpMoves moves(g, s.x);
  moves.step(g, s, epsilon, rng);
}

RunRecord run_search(const Graph& g, const ChainParams& params, const SearchOptions& options) {
  params.validate();
  const std::size_t n = g.num_nodes();
  Rng rng(params.seed);
  ChainState s = ChainState::top(g);

  RunRecord r;
  r.params = params;
  r.n = n;
  r.m = g.num_edges();
  r.graph_digest = digest(g);
  r.best_x = s.x;
  r.best_size = s.ones;

  std::optional<JumpMoves> moves;
  if (params.variant == Variant::jump) moves.emplace(g, s.x);

  long double size_sum = static_cast<long double>(s.ones);
  for (std::uint64_t t = 0; t < params.budget; ++t) {
    if (moves) {
      moves->step(g, s, params.epsilon, rng);
    } else {
      zeps_step_plain(g, s, params.epsilon, rng);
    }
    size_sum += static_cast<long double>(s.ones);
    if (s.ones < r.best_size) {
      r.best_size = s.ones;
      r.best_x = s.x;
      r.step_of_best = s.step;
    }
    if (options.check_z && !is_in_Z(g, s.x)) {
      throw InvariantViolation("visited state outside Z: " + s.x.to_string());
    }
    if (options.coherence_interval != 0 && s.step % options.coherence_interval == 0 &&
        !s.coherent(g)) {
      throw InvariantViolation("cached potential diverged at step " + std::to_string(s.step));
    }
  }

  r.steps_executed = s.step;
  r.final_x = s.x;
  r.mean_size = static_cast<double>(size_sum / static_cast<long double>(params.budget + 1));
  return r;
}

void best_response_step(const Graph& g, ChainState& s, const ControlSet& frozen, Rng& rng) {
  br_step(g, s, frozen_mask(g, frozen, s.x), rng);
}

std::optional<std::uint64_t> run_controlled(const Graph& g, const ControlSet& c,
                                            const Configuration& x0, std::uint64_t max_steps,
                                            Rng& rng) {
  if (x0.size() != g.num_nodes()) {
    throw std::invalid_argument("initial configuration length does not match graph size");
  }
  const auto mask = frozen_mask(g, c, x0);
  ChainState s = ChainState::at(g, x0);
  const std::size_t n = g.num_nodes();
  if (s.ones == n) return 0;
  while (s.step < max_steps) {
    br_step(g, s, mask, rng);
    if (s.ones == n) return s.step;
  }
  return std::nullopt;
}

double empirical_sufficiency(const Graph& g, const ControlSet& c, std::size_t trials,
                             std::uint64_t budget, std::uint64_t seed) {
  if (trials == 0) throw std::invalid_argument("empirical_sufficiency needs trials > 0");
  const Configuration x0 = c.indicator(g.num_nodes());
  std::size_t hits = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, t, 0));
    if (run_controlled(g, c, x0, budget, rng)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(trials);
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

nlohmann::json to_json(const RunRecord& r) {
  return {
      {"best_x", r.best_x.to_string()},
      {"best_set", r.best_x.support()},
      {"best_size", r.best_size},
      {"steps_executed", r.steps_executed},
      {"step_of_best", r.step_of_best},
      {"final_x", r.final_x.to_string()},
      {"final_size", r.final_x.count()},
      {"mean_size", r.mean_size},
      {"params",
       {{"epsilon", r.params.epsilon},
        {"budget", r.params.budget},
        {"variant", to_string(r.params.variant)},
        {"seed", r.params.seed}}},
      {"n", r.n},
      {"m", r.m},
      {"graph_digest", r.graph_digest},
  };
}

std::string csv_header() { return "run_id,n,m,seed,epsilon,variant,budget,best_size,step_of_best"; }

std::string csv_row(std::uint64_t run_id, const RunRecord& r) {
  return std::to_string(run_id) + ',' + std::to_string(r.n) + ',' + std::to_string(r.m) + ',' +
         std::to_string(r.params.seed) + ',' + format_double(r.params.epsilon) + ',' +
         to_string(r.params.variant) + ',' + std::to_string(r.params.budget) + ',' +
         std::to_string(r.best_size) + ',' + std::to_string(r.step_of_best);
}

}  // namespace majctl
