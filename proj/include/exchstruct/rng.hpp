#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace exchstruct {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// xoshiro256** with an explicit state, so samples are reproducible across
// platforms and thread counts. Each Monte Carlo draw gets its own substream
// (seed, index) and results are independent of the parallel schedule.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : state_) {
      sm = splitmix64(sm);
      word = sm;
    }
  }

  static Rng substream(std::uint64_t seed, std::uint64_t index) {
    return Rng(splitmix64(seed ^ 0x6a09e667f3bcc908ULL) ^ splitmix64(index));
  }

  std::uint64_t next_u64() {
    auto rotl = [](std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); };
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform on [0,1) with 53 random bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on (0,1), for logs and inverse CDFs.
  double uniform_open01() {
    double u;
    do {
      u = uniform01();
    } while (u == 0.0);
    return u;
  }

  double normal() {
    double u1 = uniform_open01();
    double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  bool bernoulli(double p) { return uniform01() < p; }

 private:
  std::uint64_t state_[4];
};

}  // namespace exchstruct
