#pragma once

// Exact brute-force ground truth for small graphs: exhaustive optimum,
// enumeration of the reachable set Z of the downward chain, the exact
// transition matrix of the search chain and its stationary law.
//
// Matrices are dense Eigen types templated on the scalar, so the same code
// runs in double and in exact rational arithmetic (Rational below).

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <json.hpp>

#include "majctl/cascade.hpp"
#include "majctl/chain.hpp"
#include "majctl/game.hpp"
#include "majctl/graph.hpp"

namespace majctl {

using Rational = boost::multiprecision::cpp_rational;

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Parses "p/q", a decimal such as "0.2", or an integer into an exact
/// rational. Throws std::invalid_argument on malformed text.
Rational parse_rational(std::string_view text);

inline constexpr std::size_t kMaxExhaustiveNodes = 20;
inline constexpr std::size_t kMaxEnumerationNodes = 16;
inline constexpr std::size_t kMaxDenseStates = 4096;

struct OptimumResult {
  /// Smallest valid cardinality, or nullopt when none exists up to searched_up_to.
  std::optional<std::size_t> size;
  ControlSet witness;
  std::size_t searched_up_to = 0;
};

/// Scans subsets by increasing cardinality (lexicographic within a size) and
/// returns the first valid one. Throws std::invalid_argument when n > 20.
OptimumResult exhaustive_optimum(const Graph& g,
                                 std::size_t max_k = std::numeric_limits<std::size_t>::max());

/// Reachable states of the downward chain from 1, in breadth-first order.
/// Bit i of a mask is x_i.
struct ZEnumeration {
  std::size_t n = 0;
  std::vector<std::uint32_t> masks;
  std::vector<std::uint8_t> absorbing;
  std::unordered_map<std::uint32_t, std::size_t> index;

  std::size_t size() const { return masks.size(); }
  Configuration state(std::size_t k) const { return Configuration::from_mask(n, masks[k]); }
  std::size_t ones(std::size_t k) const;
  std::size_t absorbing_count() const;
  std::optional<std::size_t> find(const Configuration& x) const;
};

/// Breadth-first search from 1 over the moves x -> (0, x_-i) with x_i = 1 and
/// n1 >= n0. Throws std::invalid_argument when n > 16.
ZEnumeration enumerate_Z(const Graph& g);

namespace detail {
std::vector<std::uint32_t> neighbor_masks(const Graph& g);
bool feasible(std::uint32_t state, std::uint32_t nbr_mask, std::size_t degree);
}  // namespace detail

template <typename Scalar>
struct TransitionMatrix {
  DenseMatrix<Scalar> P;
  Scalar epsilon;
  /// ||x||_1 of each state, in enumeration order.
  std::vector<std::size_t> ones;
};

/// Row-stochastic kernel of the plain search chain on Z: 1/n for each
/// feasible down-move, eps/n for each feasible up-move, remainder on the
/// diagonal. Throws InvariantViolation if a feasible move leaves Z.
template <typename Scalar>
TransitionMatrix<Scalar> build_transition_matrix(const Graph& g, const ZEnumeration& z,
                                                 const Scalar& epsilon) {
  if (!(epsilon > Scalar(0) && epsilon <= Scalar(1))) {
    throw std::invalid_argument("epsilon must lie in (0, 1]");
  }
  if (z.size() > kMaxDenseStates) {
    throw std::invalid_argument("state space too large for a dense transition matrix");
  }
  const std::size_t n = g.num_nodes();
  const auto nbr = detail::neighbor_masks(g);
  const Scalar down = Scalar(1) / Scalar(static_cast<long long>(n));
  const Scalar up = epsilon / Scalar(static_cast<long long>(n));

  TransitionMatrix<Scalar> tm;
  tm.epsilon = epsilon;
  tm.P = DenseMatrix<Scalar>::Zero(static_cast<Eigen::Index>(z.size()),
                                   static_cast<Eigen::Index>(z.size()));
  tm.ones.resize(z.size());
  for (std::size_t k = 0; k < z.size(); ++k) {
    const std::uint32_t s = z.masks[k];
    tm.ones[k] = z.ones(k);
    long long downs = 0;
    long long ups = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!detail::feasible(s, nbr[i], g.degree(static_cast<Node>(i)))) continue;
      const std::uint32_t t = s ^ (std::uint32_t{1} << i);
      const auto it = z.index.find(t);
      if (it == z.index.end()) {
        throw InvariantViolation("feasible move leaves Z: " + z.state(k).to_string() + " -> " +
                                 Configuration::from_mask(n, t).to_string());
      }
      const Scalar& p = ((s >> i) & 1U) ? down : up;
      tm.P(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(it->second)) = p;
      ((s >> i) & 1U) ? ++downs : ++ups;
    }
    const auto nn = static_cast<long long>(n);
    tm.P(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) =
        (Scalar(nn - downs) - epsilon * Scalar(ups)) / Scalar(nn);
  }
  return tm;
}

/// Normalized eps^{||x||_1} over the enumerated states.
template <typename Scalar>
DenseVector<Scalar> expected_stationary(const TransitionMatrix<Scalar>& tm) {
  const auto size = static_cast<Eigen::Index>(tm.ones.size());
  DenseVector<Scalar> w(size);
  Scalar total(0);
  for (Eigen::Index k = 0; k < size; ++k) {
    Scalar p(1);
    for (std::size_t e = 0; e < tm.ones[static_cast<std::size_t>(k)]; ++e) p *= tm.epsilon;
    w(k) = p;
    total += p;
  }
  for (Eigen::Index k = 0; k < size; ++k) w(k) /= total;
  return w;
}

/// Unique stationary law of an irreducible P by the Grassmann-Taksar-Heyman
/// state reduction. The elimination never subtracts, so every component
/// keeps full relative accuracy in floating point, and it is exact for
/// rational scalars. Throws std::runtime_error if P is reducible.
template <typename Scalar>
DenseVector<Scalar> stationary_distribution(const TransitionMatrix<Scalar>& tm) {
  const Eigen::Index size = tm.P.rows();
  DenseMatrix<Scalar> A = tm.P;
  for (Eigen::Index k = size - 1; k > 0; --k) {
    Scalar out(0);
    for (Eigen::Index j = 0; j < k; ++j) out += A(k, j);
    if (out == Scalar(0)) throw std::runtime_error("transition matrix is reducible");
    for (Eigen::Index i = 0; i < k; ++i) A(i, k) /= out;
    for (Eigen::Index i = 0; i < k; ++i) {
      if (A(i, k) == Scalar(0)) continue;
      for (Eigen::Index j = 0; j < k; ++j) A(i, j) += A(i, k) * A(k, j);
    }
  }
  DenseVector<Scalar> pi(size);
  Scalar total(0);
  for (Eigen::Index k = 0; k < size; ++k) {
    Scalar v(k == 0 ? 1 : 0);
    for (Eigen::Index i = 0; i < k; ++i) v += pi(i) * A(i, k);
    pi(k) = v;
    total += v;
  }
  for (Eigen::Index k = 0; k < size; ++k) pi(k) /= total;
  return pi;
}

/// Powers of the lazy kernel (I + P) / 2, which shares the stationary law
/// and is aperiodic, by repeated squaring. Stops once every column of the
/// power is constant to within `tol`.
DenseVector<double> stationary_power_iteration(const TransitionMatrix<double>& tm,
                                               double tol = 1e-13,
                                               std::size_t max_squarings = 64);

/// max over state pairs of |eps^{|x|} P(x,y) - eps^{|y|} P(y,x)|.
template <typename Scalar>
Scalar check_detailed_balance(const TransitionMatrix<Scalar>& tm) {
  using std::abs;
  std::vector<Scalar> weight;
  for (std::size_t k : tm.ones) {
    Scalar p(1);
    for (std::size_t e = 0; e < k; ++e) p *= tm.epsilon;
    weight.push_back(p);
  }
  Scalar worst(0);
  for (Eigen::Index x = 0; x < tm.P.rows(); ++x) {
    for (Eigen::Index y = x + 1; y < tm.P.cols(); ++y) {
      if (tm.P(x, y) == Scalar(0) && tm.P(y, x) == Scalar(0)) continue;
      Scalar v = weight[static_cast<std::size_t>(x)] * tm.P(x, y) -
                 weight[static_cast<std::size_t>(y)] * tm.P(y, x);
      if (v < Scalar(0)) v = -v;
      if (v > worst) worst = v;
    }
  }
  return worst;
}

/// max_k |pi_k - mu_k| / mu_k against the normalized eps^{||x||_1} law.
double stationary_max_rel_error(const DenseVector<double>& pi, const TransitionMatrix<double>& tm);

/// All minimal sufficient control sets, ordered by size then lexicographically.
/// Throws std::invalid_argument when n > 16.
std::vector<ControlSet> enumerate_minimal_sets(const Graph& g);

struct MinorityNashReport {
  std::size_t nash_count = 0;
  /// Every minority-game equilibrium has a valid support.
  bool all_valid = true;
  /// Some equilibrium support of size <= floor(n/2) is valid.
  bool half_bound = false;
};

MinorityNashReport minority_nash_report(const Graph& g);
bool check_minority_nash_validity(const Graph& g);

struct OracleReport {
  OptimumResult optimum;
  std::optional<std::size_t> z_size;
  std::optional<std::size_t> z_inf_size;
  std::optional<std::size_t> minimal_count;
  std::optional<double> detailed_balance_violation;
  std::optional<double> stationary_max_rel_err;
};

/// Everything the brute-force oracle can compute for g within its size
/// guards. Quantities past a guard are left empty; n > 20 throws.
OracleReport run_oracle(const Graph& g, const Rational& epsilon);

nlohmann::json to_json(const OracleReport& r);

}  // namespace majctl
