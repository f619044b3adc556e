#include "projcov/randsrc.hpp"

#include "projcov/errors.hpp"

#include <bit>
#include <cmath>
#include <string>

namespace projcov::rng {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kPathSalt = 0xD1B54A32D192ED03ULL;
constexpr double kTwoPow53Inv = 1.0 / 9007199254740992.0;
constexpr double kMinNorm = 1e-300;

// Ziggurat constants for 128 layers of equal area kArea.
constexpr int kLayers = 128;
constexpr double kTailStart = 3.442619855899;
constexpr double kArea = 9.91256303526217e-3;

struct ZigguratTables {
  double x[kLayers + 1];
  double ratio[kLayers];
};

ZigguratTables build_tables() {
  ZigguratTables t{};
  double f = std::exp(-0.5 * kTailStart * kTailStart);
  t.x[0] = kArea / f;
  t.x[1] = kTailStart;
  t.x[kLayers] = 0.0;
  for (int i = 2; i < kLayers; ++i) {
    t.x[i] = std::sqrt(-2.0 * std::log(kArea / t.x[i - 1] + f));
    f = std::exp(-0.5 * t.x[i] * t.x[i]);
  }
  for (int i = 0; i < kLayers; ++i) t.ratio[i] = t.x[i + 1] / t.x[i];
  return t;
}

const ZigguratTables kZig = build_tables();

std::uint64_t splitmix_next(std::uint64_t& state) noexcept {
  state += kGolden;
  return mix64(state);
}

}  // namespace

std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

StreamKey StreamKey::child(std::uint64_t index) const {
  StreamKey out = *this;
  out.path.push_back(index);
  return out;
}

StreamKey StreamKey::child(std::initializer_list<std::uint64_t> indices) const {
  StreamKey out = *this;
  out.path.insert(out.path.end(), indices.begin(), indices.end());
  return out;
}

std::uint64_t StreamKey::digest() const noexcept {
  std::uint64_t h = mix64(seed + kGolden);
  for (const std::uint64_t e : path) h = mix64(h ^ mix64(e + kPathSalt));
  return h;
}

Stream::Stream(const StreamKey& key) noexcept {
  std::uint64_t sm = key.digest();
  for (auto& word : s_) word = splitmix_next(sm);
  if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
}

std::uint64_t Stream::next_u64() noexcept {
  const std::uint64_t result = std::rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = std::rotl(s_[3], 45);
  return result;
}

double Stream::uniform() noexcept {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * kTwoPow53Inv;
}

double Stream::gaussian() noexcept {
  for (;;) {
    const std::uint64_t bits = next_u64();
    // Top 53 bits drive the abscissa, the low 7 pick the layer.
    const double u = 2.0 * ((static_cast<double>(bits >> 11) + 0.5) * kTwoPow53Inv) - 1.0;
    const int layer = static_cast<int>(bits & (kLayers - 1));
    if (std::abs(u) < kZig.ratio[layer]) return u * kZig.x[layer];
    if (layer == 0) {
      // Marsaglia's tail sampler beyond kTailStart.
      double x;
      double y;
      do {
        x = std::log(uniform()) / kTailStart;
        y = std::log(uniform());
      } while (-2.0 * y < x * x);
      return u < 0.0 ? x - kTailStart : kTailStart - x;
    }
    const double x = u * kZig.x[layer];
    const double f0 = std::exp(-0.5 * (kZig.x[layer] * kZig.x[layer] - x * x));
    const double f1 = std::exp(-0.5 * (kZig.x[layer + 1] * kZig.x[layer + 1] - x * x));
    if (f1 + uniform() * (f0 - f1) < 1.0) return x;
  }
}

void Stream::fill_gaussian(std::span<double> out) noexcept {
  for (double& v : out) v = gaussian();
}

Vector gaussian_vector(std::size_t dim, const StreamKey& key) {
  Vector out(static_cast<Eigen::Index>(dim));
  Stream stream(key);
  stream.fill_gaussian({out.data(), dim});
  return out;
}

Vector unit_projection(std::size_t dim, const StreamKey& key) {
  if (dim == 0) throw DomainError("unit_projection: dim must be >= 1");
  Vector out(static_cast<Eigen::Index>(dim));
  Stream stream(key);
  for (int attempt = 0; attempt < 2; ++attempt) {
    stream.fill_gaussian({out.data(), dim});
    const double norm = out.norm();
    if (norm >= kMinNorm) {
      out /= norm;
      return out;
    }
  }
  throw DegenerateDraw("unit_projection: Gaussian draw of dim " + std::to_string(dim) + " had zero norm twice");
}

ProjectionSet projection_set(std::size_t dim, std::size_t count, const StreamKey& key) {
  if (dim == 0 || count == 0) throw DomainError("projection_set: dim and count must be >= 1");
  ProjectionSet set{dim, count, key, DataMatrix(static_cast<Eigen::Index>(count), static_cast<Eigen::Index>(dim))};
  for (std::size_t i = 0; i < count; ++i) {
    set.vectors.row(static_cast<Eigen::Index>(i)) = unit_projection(dim, key.child(i)).transpose();
  }
  return set;
}

}  // namespace projcov::rng
