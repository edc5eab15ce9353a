#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace dmlab {

/// Mixes two 64-bit values into one (splitmix64 finalizer over the sum).
/// Used everywhere a sub-stream seed is derived from a parent seed plus a
/// purpose tag, so that all randomness in a run is a pure function of the
/// global seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag);

/// FNV-1a hash of a label, for naming sub-streams ("init", "data", ...).
std::uint64_t stream_tag(std::string_view label);

/// Deterministic random stream: xoshiro256++ core seeded via splitmix64,
/// uniform doubles with 53 bits, normals via Box-Muller with a one-value
/// cache. The same seed always yields the same sequence, independent of
/// platform or standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();

  /// Uniform double in [0, 1).
  double uniform();

  /// Standard normal draw.
  double normal();

  /// Uniform integer in [0, n). Requires n > 0.
  std::uint64_t uniform_index(std::uint64_t n);

  /// Independent stream keyed off this stream's construction seed and a
  /// tag. Forking does not consume or depend on the current position.
  Rng fork(std::uint64_t tag) const { return Rng(mix_seed(seed_, tag)); }
  Rng fork(std::string_view label) const { return fork(stream_tag(label)); }

  std::uint64_t seed() const { return seed_; }

  /// Full state, for bitwise-exact checkpoint round trips.
  struct State {
    std::uint64_t seed = 0;
    std::array<std::uint64_t, 4> s{};
    bool has_cached = false;
    std::uint64_t cached_bits = 0;  // bit pattern of the cached normal
  };
  State state() const;
  static Rng restore(const State& st);

 private:
  Rng() = default;

  std::uint64_t seed_ = 0;
  std::array<std::uint64_t, 4> s_{};
  bool has_cached_ = false;
  double cached_normal_ = 0.0;
};

}  // namespace dmlab
