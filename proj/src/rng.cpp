#include "cvb/rng.hpp"

#include <cmath>
#include <numbers>

namespace cvb {

namespace {

// SplitMix64 finalizer; full-period avalanche mixer.
std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

}  // namespace

std::uint64_t CounterRng::next_u64() {
  std::uint64_t h = mix64(seed_ + kGolden);
  h = mix64(h ^ (stream_ + kGolden));
  h = mix64(h ^ (counter_ + kGolden));
  ++counter_;
  return h;
}

double CounterRng::next_uniform() {
  // 53-bit mantissa, shifted into (0, 1].
  return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

Eigen::Vector2d CounterRng::next_normal_pair() {
  const double u1 = next_uniform();
  const double u2 = next_uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(theta), r * std::sin(theta)};
}

std::uint64_t CounterRng::derive(std::uint64_t seed, std::uint64_t salt) {
  return mix64(mix64(seed + kGolden) ^ (salt + kGolden));
}

}  // namespace cvb
