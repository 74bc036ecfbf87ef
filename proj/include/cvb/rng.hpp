#ifndef CVB_RNG_HPP
#define CVB_RNG_HPP

#include <cstdint>

#include <Eigen/Dense>

namespace cvb {

/// Counter-based random stream: each draw is a stateless hash of
/// (seed, stream, counter), so streams are splittable and a fixed
/// (seed, stream) pair replays bit-identically on any schedule.
/// Monte-Carlo callers key one stream per trajectory.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : seed_(seed), stream_(stream) {}

  std::uint64_t next_u64();

  /// Uniform in (0, 1].
  double next_uniform();

  /// Pair of independent standard normals (Box-Muller); consumes exactly
  /// two counter values.
  Eigen::Vector2d next_normal_pair();

  /// Derive a decorrelated child seed, e.g. one per sweep grid point.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t salt);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
};

}  // namespace cvb

#endif  // CVB_RNG_HPP
