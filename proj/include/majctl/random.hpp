#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace majctl {

/// SplitMix64 finalizer; a bijection on 64-bit words.
std::uint64_t splitmix64(std::uint64_t x);

/// Child seed for stream (a, b) of a base seed:
///   derive_seed(base, a, b) = mix(mix(mix(base) ^ a) ^ b), mix = splitmix64.
/// Used as derive_seed(base_seed, graph_index, run_index) by the experiment
/// harness so every run owns an independent, schedule-free stream.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b);

/// Deterministic generator. The engine is std::mt19937_64, whose output
/// sequence is fixed by the standard; the draws below are implemented here
/// because the std:: distributions differ between standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, bound), unbiased (Lemire's multiply-and-reject).
  std::size_t uniform_index(std::size_t bound);

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return p >= 1.0 || uniform01() < p; }

  bool coin() { return (next() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace majctl
