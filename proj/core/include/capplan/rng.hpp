#pragma once

#include <cmath>
#include <cstdint>

namespace capplan {

// Hand-rolled generators so simulation streams are identical on every
// platform; the standard library distributions are implementation defined.

// splitmix64; used only to expand seeds into generator state.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

// xoshiro256**. The stream depends only on (seed, stream), so replications
// can run in any order or in parallel without changing their draws.
class Xoshiro256StarStar {
 public:
  Xoshiro256StarStar(std::uint64_t seed, std::uint64_t stream) {
    SplitMix64 sm(seed ^ (0x9E3779B97F4A7C15ULL * (stream + 1)));
    for (auto& word : s_) word = sm.next();
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
  }

  std::uint64_t next() {
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

  // 53-bit mantissa draws; [0,1).
  double uniform01() { return double(next() >> 11) * 0x1.0p-53; }

  // (0,1]; safe under log().
  double uniform01_open0() { return double((next() >> 11) + 1) * 0x1.0p-53; }

  double exponential(double rate) {
    return -std::log1p(-uniform01()) / rate;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t s_[4];
};

}  // namespace capplan
