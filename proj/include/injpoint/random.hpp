#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace injpoint {

/// SplitMix64 finalizer. Used to turn structured keys (seed, node count,
/// attempt index) into well-spread generator seeds.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t master,
                                    std::initializer_list<std::uint64_t> keys) noexcept {
  std::uint64_t h = mix64(master);
  for (auto k : keys) h = mix64(h ^ mix64(k));
  return h;
}

/// Reproducible uniform source.
///
/// std::mt19937_64 has a fully specified output sequence, but the standard
/// distributions do not, so reals are built directly from the top 53 bits.
class UniformSource {
 public:
  explicit UniformSource(std::uint64_t seed) : engine_(seed) {}

  /// Uniform double in [0, 1).
  double next_unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double next_in(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace injpoint
