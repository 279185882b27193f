#include "slatbp/rng.hpp"

#include <cmath>

namespace slatbp {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t kind, std::uint64_t index) {
  std::uint64_t state = seed;
  std::uint64_t a = splitmix64(state);
  state ^= kind * 0xda942042e4dd58b5ULL;
  std::uint64_t b = splitmix64(state);
  state ^= index * 0x2545f4914f6cdd1dULL;
  std::uint64_t c = splitmix64(state);
  return a ^ (b + 0x9e3779b97f4a7c15ULL) ^ (c << 1);
}

}  // namespace

Rng::Rng(std::uint64_t seed) : gen_(derive_seed(seed, 0, 0)) {}

Rng::Rng(std::uint64_t seed, Stream kind, std::uint64_t index)
    : gen_(derive_seed(seed, static_cast<std::uint64_t>(kind) + 1, index)) {}

std::uint64_t Rng::next_u64() { return gen_(); }

double Rng::uniform() {
  // 53 random bits mapped to [0, 1).
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(next_u64());  // full 64-bit range
  const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % span;
  std::uint64_t draw;
  do {
    draw = next_u64();
  } while (draw >= limit);
  return lo + static_cast<std::int64_t>(draw % span);
}

double Rng::normal() {
  // Box-Muller, cosine branch only: deterministic two draws per variate.
  double u1;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

double Rng::normal(double mean, double sigma) { return mean + sigma * normal(); }

}  // namespace slatbp
