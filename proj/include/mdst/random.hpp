#pragma once

// Seeded, stream-splittable random number generation.
//
// Every replicate of every experiment draws from its own generator, derived
// from a (base_seed, stream_index) pair through the SplitMix64 finalizer.
// The derivation is fully specified here so results replay bit-for-bit on
// any machine with IEEE doubles.

#include <cstdint>
#include <limits>

namespace mdst {

struct SeedSpec {
  std::uint64_t base_seed = 0;
  std::uint64_t stream_index = 0;
};

// SplitMix64 finalizer (Stafford variant 13).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

// Key identifying one stream; distinct (base, stream) pairs give distinct keys
// with overwhelming probability.
constexpr std::uint64_t stream_key(const SeedSpec& s) noexcept {
  return mix64(mix64(s.base_seed + kGoldenGamma) ^ (s.stream_index * kGoldenGamma + 0x632be59bd9b4e019ULL));
}

// Derive a child seed for a named sub-purpose of one replicate (e.g. the
// series sampler versus the tree sampler inside the same experiment).
constexpr SeedSpec substream(const SeedSpec& s, std::uint64_t salt) noexcept {
  return SeedSpec{mix64(s.base_seed ^ mix64(salt + 0x5851f42d4c957f2dULL)), s.stream_index};
}

// Maps 64 random bits to a double uniform on (0,1].
constexpr double bits_to_unit_open_closed(std::uint64_t bits) noexcept {
  // [0,1) on a 2^-53 lattice, then u -> 1-u
  return 1.0 - static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Counter-based uniform on (0,1]: a pure function of (key, counter).
constexpr double hashed_unit(std::uint64_t key, std::uint64_t counter) noexcept {
  return bits_to_unit_open_closed(mix64(key ^ mix64(counter * kGoldenGamma)));
}

// xoshiro256** 1.0; satisfies UniformRandomBitGenerator.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(const SeedSpec& seed) noexcept {
    std::uint64_t x = stream_key(seed);
    for (auto& w : s_) {
      x += kGoldenGamma;
      w = mix64(x);
    }
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform on (0,1].
  double uniform() noexcept { return bits_to_unit_open_closed((*this)()); }

  // Uniform on [0,1).
  double uniform_co() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t s_[4]{};
};

}  // namespace mdst
