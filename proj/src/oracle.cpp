#include "majctl/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <deque>

namespace majctl {

Rational parse_rational(std::string_view text) {
  const auto bad = [&] {
    return std::invalid_argument("cannot parse '" + std::string(text) + "' as a rational");
  };
  const auto digits = [](std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
  };
  // cpp_int reads a leading 0 as an octal prefix.
  const auto integer = [](std::string_view s) {
    s.remove_prefix(std::min(s.find_first_not_of('0'), s.size()));
    return boost::multiprecision::cpp_int(s.empty() ? std::string("0") : std::string(s));
  };
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto num = text.substr(0, slash);
    const auto den = text.substr(slash + 1);
    if (!digits(num) || !digits(den)) throw bad();
    const auto d = integer(den);
    if (d == 0) throw bad();
    return Rational(integer(num), d);
  }
  const auto dot = text.find('.');
  auto whole = text.substr(0, dot);
  auto frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if (whole.empty() && frac.empty()) throw bad();
  if ((!whole.empty() && !digits(whole)) || (!frac.empty() && !digits(frac))) throw bad();
  const auto num = integer(std::string(whole) + std::string(frac));
  boost::multiprecision::cpp_int den = boost::multiprecision::pow(boost::multiprecision::cpp_int(10),
                                                                  static_cast<unsigned>(frac.size()));
  return Rational(num, den);
}

OptimumResult exhaustive_optimum(const Graph& g, std::size_t max_k) {
  const std::size_t n = g.num_nodes();
  if (n > kMaxExhaustiveNodes) {
    throw std::invalid_argument("exhaustive optimum limited to n <= 20");
  }
  OptimumResult r;
  const std::size_t cap = std::min(max_k, n);
  for (std::size_t k = 0; k <= cap; ++k) {
    r.searched_up_to = k;
    // Lexicographic k-combinations of 0..n-1.
    std::vector<Node> pick(k);
    for (std::size_t j = 0; j < k; ++j) pick[j] = static_cast<Node>(j);
    while (true) {
      ControlSet c(pick);
      if (is_valid(g, c)) {
        r.size = k;
        r.witness = std::move(c);
        return r;
      }
      std::size_t j = k;
      while (j > 0 && pick[j - 1] == n - k + j - 1) --j;
      if (j == 0) break;
      ++pick[j - 1];
      for (std::size_t t = j; t < k; ++t) pick[t] = pick[t - 1] + 1;
    }
  }
  return r;
}

std::size_t ZEnumeration::ones(std::size_t k) const {
  return static_cast<std::size_t>(std::popcount(masks[k]));
}

std::size_t ZEnumeration::absorbing_count() const {
  return static_cast<std::size_t>(std::count(absorbing.begin(), absorbing.end(), std::uint8_t{1}));
}

std::optional<std::size_t> ZEnumeration::find(const Configuration& x) const {
  if (x.size() != n) return std::nullopt;
  const auto it = index.find(static_cast<std::uint32_t>(x.mask()));
  if (it == index.end()) return std::nullopt;
  return it->second;
}

namespace detail {

std::vector<std::uint32_t> neighbor_masks(const Graph& g) {
  std::vector<std::uint32_t> out(g.num_nodes(), 0);
  for (Node i = 0; i < g.num_nodes(); ++i) {
    for (Node j : g.neighbors(i)) out[i] |= std::uint32_t{1} << j;
  }
  return out;
}

bool feasible(std::uint32_t state, std::uint32_t nbr_mask, std::size_t degree) {
  return 2 * static_cast<std::size_t>(std::popcount(state & nbr_mask)) >= degree;
}

}  // namespace detail

ZEnumeration enumerate_Z(const Graph& g) {
  const std::size_t n = g.num_nodes();
  if (n > kMaxEnumerationNodes) throw std::invalid_argument("Z enumeration limited to n <= 16");
  const auto nbr = detail::neighbor_masks(g);

  ZEnumeration z;
  z.n = n;
  const std::uint32_t top = (std::uint32_t{1} << n) - 1;
  z.masks.push_back(top);
  z.index.emplace(top, 0);
  for (std::size_t head = 0; head < z.masks.size(); ++head) {
    const std::uint32_t s = z.masks[head];
    bool any_move = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (!((s >> i) & 1U) || !detail::feasible(s, nbr[i], g.degree(static_cast<Node>(i)))) continue;
      any_move = true;
      const std::uint32_t t = s & ~(std::uint32_t{1} << i);
      if (z.index.emplace(t, z.masks.size()).second) z.masks.push_back(t);
    }
    z.absorbing.push_back(any_move ? 0 : 1);
  }
  return z;
}

DenseVector<double> stationary_power_iteration(const TransitionMatrix<double>& tm, double tol,
                                               std::size_t max_squarings) {
  const Eigen::Index size = tm.P.rows();
  DenseMatrix<double> power = 0.5 * (DenseMatrix<double>::Identity(size, size) + tm.P);
  for (std::size_t it = 0; it < max_squarings; ++it) {
    power = (power * power).eval();
    // Rounding drift in the row sums would otherwise compound with each squaring.
    power = power.array().colwise() / power.rowwise().sum().array();
    const double spread =
        (power.colwise().maxCoeff() - power.colwise().minCoeff()).maxCoeff();
    if (spread < tol) {
      DenseVector<double> pi = power.colwise().mean().transpose();
      return pi / pi.sum();
    }
  }
  throw std::runtime_error("power iteration did not converge");
}

double stationary_max_rel_error(const DenseVector<double>& pi, const TransitionMatrix<double>& tm) {
  const DenseVector<double> mu = expected_stationary(tm);
  return ((pi - mu).cwiseAbs().array() / mu.array()).maxCoeff();
}

std::vector<ControlSet> enumerate_minimal_sets(const Graph& g) {
  const ZEnumeration z = enumerate_Z(g);
  std::vector<ControlSet> out;
  for (std::size_t k = 0; k < z.size(); ++k) {
    ControlSet c = ControlSet::support_of(z.state(k));
    if (is_minimal(g, c)) out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](const ControlSet& a, const ControlSet& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

MinorityNashReport minority_nash_report(const Graph& g) {
  MinorityNashReport r;
  const std::size_t half = g.num_nodes() / 2;
  for (const auto& x : enumerate_nash_minority(g)) {
    ++r.nash_count;
    const bool valid = is_valid(g, ControlSet::support_of(x));
    r.all_valid = r.all_valid && valid;
    if (valid && x.count() <= half) r.half_bound = true;
  }
  return r;
}

bool check_minority_nash_validity(const Graph& g) {
  const auto r = minority_nash_report(g);
  return r.all_valid && r.half_bound;
}

OracleReport run_oracle(const Graph& g, const Rational& epsilon) {
  OracleReport r;
  r.optimum = exhaustive_optimum(g);
  if (g.num_nodes() > kMaxEnumerationNodes) return r;

  const ZEnumeration z = enumerate_Z(g);
  r.z_size = z.size();
  r.z_inf_size = z.absorbing_count();
  r.minimal_count = enumerate_minimal_sets(g).size();
  if (z.size() > kMaxDenseStates) return r;

  const auto exact = build_transition_matrix<Rational>(g, z, epsilon);
  r.detailed_balance_violation = check_detailed_balance(exact).convert_to<double>();
  const auto tm = build_transition_matrix<double>(g, z, epsilon.convert_to<double>());
  r.stationary_max_rel_err = stationary_max_rel_error(stationary_distribution(tm), tm);
  return r;
}

nlohmann::json to_json(const OracleReport& r) {
  const auto opt = [](const auto& v) -> nlohmann::json {
    if (v) return *v;
    return nullptr;
  };
  nlohmann::json witness = nullptr;
  if (r.optimum.size) {
    witness = std::vector<Node>(r.optimum.witness.members().begin(), r.optimum.witness.members().end());
  }
  return {
      {"optimum", opt(r.optimum.size)},
      {"witness", witness},
      {"z_size", opt(r.z_size)},
      {"z_inf_size", opt(r.z_inf_size)},
      {"minimal_count", opt(r.minimal_count)},
      {"detailed_balance_violation", opt(r.detailed_balance_violation)},
      {"stationary_max_rel_err", opt(r.stationary_max_rel_err)},
  };
}

}  // namespace majctl
