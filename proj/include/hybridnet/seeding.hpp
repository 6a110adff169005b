#pragma once

// Deterministic seed derivation and a small RNG facade. The engine is
// std::mt19937_64, whose output sequence is fixed by the standard; variates
// are produced here rather than through <random> distributions, whose
// algorithms differ between standard libraries.

#include <cmath>
#include <cstdint>
#include <random>

namespace hybridnet {

// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// h0 = mix64(master); h_{k+1} = mix64(h_k ^ word_k) over
// (sweep_index, stream_tag, trial_index).
constexpr std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t sweep_index,
                                    std::uint64_t stream_tag, std::uint64_t trial_index) {
  std::uint64_t h = mix64(master_seed);
  h = mix64(h ^ sweep_index);
  h = mix64(h ^ stream_tag);
  h = mix64(h ^ trial_index);
  return h;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  bool bernoulli(double p) { return uniform01() < p; }

  // [0, n)
  std::size_t index(std::size_t n) {
    const auto i = static_cast<std::size_t>(uniform01() * static_cast<double>(n));
    return i < n ? i : n - 1;
  }

  std::uint64_t next_seed() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace hybridnet
