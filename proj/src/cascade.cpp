#include "majctl/cascade.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>

#include "majctl/random.hpp"

namespace majctl {

ControlSet::ControlSet(std::vector<Node> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

ControlSet ControlSet::all(std::size_t n) {
  std::vector<Node> m(n);
  for (std::size_t i = 0; i < n; ++i) m[i] = static_cast<Node>(i);
  return ControlSet(std::move(m));
}

ControlSet ControlSet::parse(const std::string& text) {
  std::string cleaned = text;
  std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
  std::istringstream in(cleaned);
  std::vector<Node> m;
  std::string token;
  while (in >> token) {
    if (token.find_first_not_of("0123456789") != std::string::npos || token.size() > 9) {
      throw std::invalid_argument("bad node id '" + token + "' in control set");
    }
    m.push_back(static_cast<Node>(std::stoul(token)));
  }
  return ControlSet(std::move(m));
}

bool ControlSet::contains(Node i) const {
  return std::binary_search(members_.begin(), members_.end(), i);
}

Configuration ControlSet::indicator(std::size_t n) const {
  return Configuration::indicator(n, members_);
}

std::string ControlSet::to_string() const {
  std::string s;
  for (std::size_t k = 0; k < members_.size(); ++k) {
    if (k) s += ',';
    s += std::to_string(members_[k]);
  }
  return s;
}

bool activatable(const Graph& g, const Configuration& x, Node i) {
  const auto c = neighbor_counts(g, x, i);
  return c.n1 >= c.n0;
}

namespace {

/// Closure engine parameterized by the worklist service policy. `pick`
/// removes and returns one pending node from `pending`.
template <typename Pick>
Configuration run_closure(const Graph& g, const ControlSet& c, std::vector<Node>* order, Pick pick) {
  const std::size_t n = g.num_nodes();
  Configuration x = c.indicator(n);

  // ones[i]: active neighbors of i. A 0-node is activatable iff 2*ones >= deg.
  std::vector<std::size_t> ones(n, 0);
  for (Node v : c.members()) {
    for (Node w : g.neighbors(v)) ++ones[w];
  }
  std::vector<std::uint8_t> queued(n, 0);
  std::deque<Node> pending;
  for (Node i = 0; i < n; ++i) {
    if (!x[i] && 2 * ones[i] >= g.degree(i)) {
      queued[i] = 1;
      pending.push_back(i);
    }
  }
  // Activatability only grows with x, so a queued node stays activatable.
  while (!pending.empty()) {
    const Node v = pick(pending);
    x.set(v, true);
    if (order) order->push_back(v);
    for (Node w : g.neighbors(v)) {
      ++ones[w];
      if (!x[w] && !queued[w] && 2 * ones[w] >= g.degree(w)) {
        queued[w] = 1;
        pending.push_back(w);
      }
    }
  }
  return x;
}

Node pick_fifo(std::deque<Node>& pending) {
  const Node v = pending.front();
  pending.pop_front();
  return v;
}

}  // namespace

Configuration closure(const Graph& g, const ControlSet& c) {
  return run_closure(g, c, nullptr, pick_fifo);
}

Configuration closure_random_order(const Graph& g, const ControlSet& c, Rng& rng) {
  return run_closure(g, c, nullptr, [&rng](std::deque<Node>& pending) {
    const auto k = rng.uniform_index(pending.size());
    std::swap(pending[k], pending.back());
    const Node v = pending.back();
    pending.pop_back();
    return v;
  });
}

bool is_valid(const Graph& g, const ControlSet& c) { return closure(g, c).all(); }

std::optional<CrusadeWitness> crusade_witness(const Graph& g, const ControlSet& c) {
  CrusadeWitness w;
  if (!run_closure(g, c, &w.order, pick_fifo).all()) return std::nullopt;
  return w;
}

const char* to_string(CrusadeStatus s) {
  switch (s) {
    case CrusadeStatus::ok: return "ok";
    case CrusadeStatus::node_out_of_range: return "node_out_of_range";
    case CrusadeStatus::node_in_control_set: return "node_in_control_set";
    case CrusadeStatus::repeated_node: return "repeated_node";
    case CrusadeStatus::wrong_length: return "wrong_length";
    case CrusadeStatus::potential_decrease: return "potential_decrease";
  }
  return "?";
}

CrusadeReplay replay_crusade(const Graph& g, const ControlSet& c, const CrusadeWitness& w) {
  const std::size_t n = g.num_nodes();
  CrusadeReplay r;
  Configuration x = c.indicator(n);
  r.potentials.push_back(potential_majority(g, x));

  for (std::size_t k = 0; k < w.order.size(); ++k) {
    const Node i = w.order[k];
    auto fail = [&](CrusadeStatus s) {
      r.status = s;
      r.failed_at = k;
      return r;
    };
    if (i >= n) return fail(CrusadeStatus::node_out_of_range);
    if (c.contains(i)) return fail(CrusadeStatus::node_in_control_set);
    if (x[i]) return fail(CrusadeStatus::repeated_node);
    x.set(i, true);
    r.potentials.push_back(potential_majority(g, x));
    if (r.potentials.back() < r.potentials[r.potentials.size() - 2]) {
      return fail(CrusadeStatus::potential_decrease);
    }
  }
  if (w.order.size() + c.size() != n) {
    r.status = CrusadeStatus::wrong_length;
    r.failed_at = w.order.size();
  }
  return r;
}

bool verify_crusade(const Graph& g, const ControlSet& c, const CrusadeWitness& w) {
  return replay_crusade(g, c, w).status == CrusadeStatus::ok;
}

bool is_minimal(const Graph& g, const ControlSet& c) {
  if (!is_valid(g, c)) return false;
  const auto m = c.members();
  for (std::size_t k = 0; k < m.size(); ++k) {
    std::vector<Node> smaller(m.begin(), m.end());
    smaller.erase(smaller.begin() + static_cast<std::ptrdiff_t>(k));
    if (is_valid(g, ControlSet(std::move(smaller)))) return false;
  }
  return true;
}

ControlSet trim_to_minimal(const Graph& g, const ControlSet& c) {
  if (!is_valid(g, c)) throw std::invalid_argument("trim_to_minimal needs a valid control set");
  std::vector<Node> current(c.members().begin(), c.members().end());
  bool removed = true;
  while (removed) {
    removed = false;
    for (std::size_t k = 0; k < current.size(); ++k) {
      std::vector<Node> candidate = current;
      candidate.erase(candidate.begin() + static_cast<std::ptrdiff_t>(k));
      if (is_valid(g, ControlSet(candidate))) {
        current = std::move(candidate);
        removed = true;
        break;
      }
    }
  }
  return ControlSet(std::move(current));
}

bool is_in_Z(const Graph& g, const Configuration& x) {
  if (x.size() != g.num_nodes()) {
    throw std::invalid_argument("configuration length does not match graph size");
  }
  return is_valid(g, ControlSet::support_of(x));
}

bool is_absorbing_Z0(const Graph& g, const Configuration& x) {
  if (!is_in_Z(g, x)) return false;
  for (Node i = 0; i < g.num_nodes(); ++i) {
    if (x[i] && activatable(g, x, i)) return false;
  }
  return true;
}

}  // namespace majctl
