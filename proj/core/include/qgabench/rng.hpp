#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace qgabench {

/// SplitMix64 finalizer. Used to derive independent stream seeds.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// FNV-1a of a label, for mixing names (algorithm ids, tags) into seeds.
std::uint64_t hash_label(std::string_view label) noexcept;

/// Deterministically combines a master seed with a path of stream ids.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) noexcept;

/// The one random source threaded through every stochastic operation.
///
/// Wraps a 64-bit Mersenne twister together with the seed it was built from,
/// so that child streams can be split off without consuming parent state.
/// Draw helpers construct their distribution per call; a given seed always
/// produces the same sequence on the same toolchain.
class Rng {
 public:
  using result_type = std::mt19937_64::result_type;

  explicit Rng(std::uint64_t seed);

  std::uint64_t seed() const noexcept { return seed_; }

  /// Independent child stream; does not advance this generator.
  Rng split(std::uint64_t stream) const;

  result_type operator()() { return engine_(); }
  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }

  double uniform();
  double normal(double mean, double stddev);
  bool bernoulli(double p);
  /// Uniform integer in [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace qgabench
