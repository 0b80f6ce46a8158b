#pragma once

#include <cstdint>

namespace rfl {

// SplitMix64. Small, fast, and bit-identical across platforms, which the
// std engines/distributions are not. Good enough statistically for the
// coin-flip and digit-sampling workloads here.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform01() < p; }

 private:
  std::uint64_t state_;
};

// Counter-based stream derivation: stream i depends only on (master, i),
// so adding trials never perturbs earlier trials' streams.
inline std::uint64_t derive_stream(std::uint64_t master, std::uint64_t index) {
  SplitMix64 g(master ^ (index * 0x9e3779b97f4a7c15ULL + 0x6a09e667f3bcc909ULL));
  return g.next();
}

}  // namespace rfl
