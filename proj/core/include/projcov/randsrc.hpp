#pragma once

#include "projcov/linalg.hpp"

#include <array>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace projcov::rng {

/// Names a random stream: a master seed plus a path of sub-stream indices,
/// e.g. {replicate, role}. Two keys that compare equal always produce the
/// same variates, independent of thread count or call order.
struct StreamKey {
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> path;

  StreamKey child(std::uint64_t index) const;
  StreamKey child(std::initializer_list<std::uint64_t> indices) const;

  /// 64-bit digest of (seed, path) that seeds the stream state.
  std::uint64_t digest() const noexcept;

  friend bool operator==(const StreamKey&, const StreamKey&) = default;
};

/// xoshiro256++ generator whose 256-bit state is expanded with SplitMix64 from
/// StreamKey::digest(). Normals come from a 128-layer ziggurat (Doornik's
/// ZIGNOR layout); this choice is part of the reproducibility contract.
class Stream {
public:
  explicit Stream(const StreamKey& key) noexcept;

  std::uint64_t next_u64() noexcept;
  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform() noexcept;
  double gaussian() noexcept;
  void fill_gaussian(std::span<double> out) noexcept;

private:
  std::array<std::uint64_t, 4> s_;
};

/// SplitMix64 output function (Stafford mix13 finalizer).
std::uint64_t mix64(std::uint64_t z) noexcept;

/// dim independent N(0,1) variates from the stream named by key.
Vector gaussian_vector(std::size_t dim, const StreamKey& key);

/// gaussian_vector divided by its Euclidean norm.
Vector unit_projection(std::size_t dim, const StreamKey& key);

struct ProjectionSet {
  std::size_t dim = 0;
  std::size_t count = 0;
  StreamKey key;
  DataMatrix vectors;  // count x dim, one unit vector per row
};

/// Row i is unit_projection(dim, key.child(i)).
ProjectionSet projection_set(std::size_t dim, std::size_t count, const StreamKey& key);

}  // namespace projcov::rng
