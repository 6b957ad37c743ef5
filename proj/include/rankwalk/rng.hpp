#pragma once

// Pseudorandom streams.
//
// All randomness is derived from SplitMix64. The same mixer serves two roles:
// a sequential engine (Rng) and a counter-based stream (CounterStream) whose
// i-th output can be regenerated without storing anything, which is what
// coupling from the past needs when it revisits a time step in a later epoch.
//
// Replica streams are split by hashing (seed, replica index); see split_seed.

#include <cstdint>
#include <limits>

namespace rankwalk {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Seed for replica `index` of a run seeded with `seed`.
constexpr std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(mix64(seed) ^ mix64(index * kGoldenGamma + 0x632BE59BD9B4E019ULL));
}

// Maps a uniform 64-bit word onto [0, n) by multiply-high. The bias is at
// most n / 2^64 per draw.
inline std::uint64_t bounded(std::uint64_t word, std::uint64_t n) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(word) * n) >> 64);
}

// Sequential 64-bit engine; satisfies UniformRandomBitGenerator.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed = 0) : state_(mix64(seed)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    state_ += kGoldenGamma;
    return mix64(state_);
  }

  std::uint64_t below(std::uint64_t n) { return bounded((*this)(), n); }

  // Uniform double in [0, 1).
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

// Counter-based stream: value(i) depends only on (key, i).
class CounterStream {
 public:
  explicit CounterStream(std::uint64_t key) : key_(mix64(key ^ 0xD1B54A32D192ED03ULL)) {}

  std::uint64_t value(std::uint64_t counter) const {
    return mix64(key_ + (counter + 1) * kGoldenGamma);
  }

 private:
  std::uint64_t key_;
};

}  // namespace rankwalk
