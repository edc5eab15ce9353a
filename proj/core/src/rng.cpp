#include "dmlab/rng.hpp"

#include <bit>
#include <cmath>
#include <cstring>

#include "dmlab/errors.hpp"

namespace dmlab {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag) {
  std::uint64_t x = seed + 0x9e3779b97f4a7c15ULL * (tag + 1);
  std::uint64_t a = splitmix64(x);
  return splitmix64(x) ^ a;
}

std::uint64_t stream_tag(std::string_view label) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Rng::Rng(std::uint64_t seed) : seed_(seed) {
  std::uint64_t x = seed;
  for (auto& word : s_) word = splitmix64(x);
}

std::uint64_t Rng::next_u64() {
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

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_normal_;
  }
  // u1 in (0, 1] so the log is finite.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 6.283185307179586476925286766559 * u2;
  cached_normal_ = r * std::sin(a);
  has_cached_ = true;
  return r * std::cos(a);
}

std::uint64_t Rng::uniform_index(std::uint64_t n) {
  if (n == 0) throw ContractViolation("uniform_index: n must be positive");
  // Multiply-shift bounded draw; bias is < 2^-64 * n, negligible here and
  // fully deterministic.
  const unsigned __int128 wide =
      static_cast<unsigned __int128>(next_u64()) * static_cast<unsigned __int128>(n);
  return static_cast<std::uint64_t>(wide >> 64);
}

Rng::State Rng::state() const {
  State st;
  st.seed = seed_;
  st.s = s_;
  st.has_cached = has_cached_;
  std::uint64_t bits = 0;
  static_assert(sizeof(bits) == sizeof(cached_normal_));
  std::memcpy(&bits, &cached_normal_, sizeof(bits));
  st.cached_bits = bits;
  return st;
}

Rng Rng::restore(const State& st) {
  Rng rng;
  rng.seed_ = st.seed;
  rng.s_ = st.s;
  rng.has_cached_ = st.has_cached;
  std::memcpy(&rng.cached_normal_, &st.cached_bits, sizeof(rng.cached_normal_));
  return rng;
}

}  // namespace dmlab
