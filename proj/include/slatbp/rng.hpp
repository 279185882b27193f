#pragma once

#include <cstdint>
#include <random>

namespace slatbp {

/// Deterministic, splittable random source.
///
/// Streams are derived from a 64-bit master seed, a stream kind and an index
/// by hashing (seed, kind, index) with splitmix64 into an mt19937_64 state.
/// Two streams with different (kind, index) pairs are independent, so
/// Monte-Carlo runs can be executed in parallel and still reproduce the
/// single-threaded results bit for bit. All variates are generated from raw
/// 64-bit draws (no std::*_distribution), which keeps the byte stream
/// identical across standard-library implementations.
class Rng {
 public:
  enum class Stream : std::uint64_t {
    kMap = 0,
    kNlosDb = 1,
    kRun = 2,
    kGeneric = 3,
  };

  explicit Rng(std::uint64_t seed);
  Rng(std::uint64_t seed, Stream kind, std::uint64_t index);

  std::uint64_t next_u64();

  /// Uniform on [0, 1).
  double uniform();
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi);
  /// Uniform integer on [lo, hi], inclusive, unbiased.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  /// Standard normal via Box-Muller (two u64 draws per call).
  double normal();
  double normal(double mean, double sigma);

 private:
  std::mt19937_64 gen_;
};

/// splitmix64 step; used for seed derivation and exposed for tests.
std::uint64_t splitmix64(std::uint64_t& state);

}  // namespace slatbp
