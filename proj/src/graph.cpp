#include "majctl/graph.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "majctl/random.hpp"

namespace majctl {

Graph Graph::from_edge_list(std::size_t n, std::span<const Edge> edges) {
  if (n == 0) throw std::invalid_argument("graph must have at least one node");

  std::vector<Edge> canon;
  canon.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) {
      throw std::invalid_argument("edge (" + std::to_string(u) + "," + std::to_string(v) +
                                  ") out of range for n=" + std::to_string(n));
    }
    if (u == v) throw std::invalid_argument("self-loop at node " + std::to_string(u));
    canon.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(canon.begin(), canon.end());
  canon.erase(std::unique(canon.begin(), canon.end()), canon.end());

  Graph g;
  g.offsets_.assign(n + 1, 0);
  for (auto [u, v] : canon) {
    ++g.offsets_[u + 1];
    ++g.offsets_[v + 1];
  }
  for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];

  g.targets_.resize(2 * canon.size());
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (auto [u, v] : canon) {
    g.targets_[cursor[u]++] = v;
    g.targets_[cursor[v]++] = u;
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::sort(g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i]),
              g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i + 1]));
  }
  return g;
}

bool Graph::has_edge(Node u, Node v) const {
  if (u >= num_nodes() || v >= num_nodes()) return false;
  const auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (Node u = 0; u < num_nodes(); ++u) {
    for (Node v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

std::optional<std::string> audit(const Graph& g) {
  if (g.offsets_.size() < 2) return "empty graph";
  if (g.offsets_.front() != 0 || g.offsets_.back() != g.targets_.size()) {
    return "offsets inconsistent with adjacency storage";
  }
  if (g.targets_.size() % 2 != 0) return "odd total degree";
  const std::size_t n = g.num_nodes();
  for (Node i = 0; i < n; ++i) {
    const auto nb = g.neighbors(i);
    for (std::size_t k = 0; k < nb.size(); ++k) {
      const Node j = nb[k];
      if (j >= n) return "neighbor id out of range at node " + std::to_string(i);
      if (j == i) return "self-loop at node " + std::to_string(i);
      if (k > 0 && nb[k - 1] >= j) {
        return "adjacency of node " + std::to_string(i) + " not strictly sorted";
      }
      const auto back = g.neighbors(j);
      if (!std::binary_search(back.begin(), back.end(), i)) {
        return "asymmetric edge " + std::to_string(i) + "->" + std::to_string(j);
      }
    }
  }
  return std::nullopt;
}

Graph gen_clique(std::size_t k) {
  if (k < 2) throw std::invalid_argument("clique needs k >= 2");
  std::vector<Edge> e;
  for (Node u = 0; u < k; ++u)
    for (Node v = u + 1; v < k; ++v) e.emplace_back(u, v);
  return Graph::from_edge_list(k, e);
}

Graph gen_path(std::size_t n) {
  if (n < 1) throw std::invalid_argument("path needs n >= 1");
  std::vector<Edge> e;
  for (Node u = 0; u + 1 < n; ++u) e.emplace_back(u, u + 1);
  return Graph::from_edge_list(n, e);
}

Graph gen_cycle(std::size_t n) {
  if (n < 3) throw std::invalid_argument("cycle needs n >= 3");
  std::vector<Edge> e;
  for (Node u = 0; u < n; ++u) e.emplace_back(u, static_cast<Node>((u + 1) % n));
  return Graph::from_edge_list(n, e);
}

Graph gen_star(std::size_t leaves) {
  if (leaves < 1) throw std::invalid_argument("star needs at least one leaf");
  std::vector<Edge> e;
  for (Node v = 1; v <= leaves; ++v) e.emplace_back(0, v);
  return Graph::from_edge_list(leaves + 1, e);
}

Graph gen_double_star() {
  using namespace double_star;
  const std::vector<Edge> e{
      {kLeftHub, 2}, {kLeftHub, 3}, {kRightHub, 2}, {kRightHub, 3},
      {kLeftHub, 4}, {kLeftHub, 5}, {kRightHub, 6}, {kRightHub, 7},
  };
  return Graph::from_edge_list(8, e);
}

Graph gen_erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("Erdos-Renyi graph needs n >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("edge probability must lie in [0,1]");
  Rng rng(seed);
  std::vector<Edge> e;
  for (Node u = 0; u < n; ++u) {
    for (Node v = u + 1; v < n; ++v) {
      if (rng.uniform01() < p) e.emplace_back(u, v);
    }
  }
  return Graph::from_edge_list(n, e);
}

Graph gen_random_tree(std::size_t n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("tree needs n >= 1");
  if (n <= 2) return gen_path(n);

  Rng rng(seed);
  std::vector<Node> prufer(n - 2);
  for (auto& s : prufer) s = static_cast<Node>(rng.uniform_index(n));

  std::vector<std::size_t> remaining(n, 1);
  for (Node s : prufer) ++remaining[s];

  // Linear-time decoding: `leaf` is the smallest current leaf.
  std::vector<Edge> e;
  e.reserve(n - 1);
  Node ptr = 0;
  while (remaining[ptr] != 1) ++ptr;
  Node leaf = ptr;
  for (Node s : prufer) {
    e.emplace_back(leaf, s);
    if (--remaining[s] == 1 && s < ptr) {
      leaf = s;
    } else {
      ++ptr;
      while (remaining[ptr] != 1) ++ptr;
      leaf = ptr;
    }
  }
  e.emplace_back(leaf, static_cast<Node>(n - 1));
  return Graph::from_edge_list(n, e);
}

Graph disjoint_union(const Graph& a, const Graph& b) {
  const auto shift = static_cast<Node>(a.num_nodes());
  std::vector<Edge> e = a.edges();
  for (auto [u, v] : b.edges()) e.emplace_back(u + shift, v + shift);
  return Graph::from_edge_list(a.num_nodes() + b.num_nodes(), e);
}

namespace {

bool next_content_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    return true;
  }
  return false;
}

std::uint64_t parse_count(std::istringstream& fields, const char* what) {
  long long value = 0;
  if (!(fields >> value) || value < 0) {
    throw std::runtime_error(std::string("edge list: malformed ") + what);
  }
  return static_cast<std::uint64_t>(value);
}

}  // namespace

Graph read_edge_list(std::istream& in) {
  std::string line;
  if (!next_content_line(in, line)) throw std::runtime_error("edge list: missing header");
  std::istringstream header(line);
  const auto n = parse_count(header, "header");
  const auto m = parse_count(header, "header");

  std::vector<Edge> e;
  e.reserve(m);
  for (std::uint64_t k = 0; k < m; ++k) {
    if (!next_content_line(in, line)) {
      throw std::runtime_error("edge list: expected " + std::to_string(m) + " edges, found " +
                               std::to_string(k));
    }
    std::istringstream fields(line);
    const auto u = parse_count(fields, "edge line");
    const auto v = parse_count(fields, "edge line");
    e.emplace_back(static_cast<Node>(u), static_cast<Node>(v));
    if (u >= n || v >= n) {
      throw std::runtime_error("edge list: node id out of range in line '" + line + "'");
    }
  }
  try {
    return Graph::from_edge_list(n, e);
  } catch (const std::invalid_argument& err) {
    throw std::runtime_error(std::string("edge list: ") + err.what());
  }
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.num_nodes() << ' ' << g.num_edges() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

Graph load_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file " + path.string());
  return read_edge_list(in);
}

void save_edge_list(const std::filesystem::path& path, const Graph& g) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write graph file " + path.string());
  write_edge_list(out, g);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::string digest(const Graph& g) {
  std::ostringstream text;
  write_edge_list(text, g);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text.str()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace majctl
