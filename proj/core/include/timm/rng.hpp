#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace timm {

// splitmix64 step, used to derive independent seeds for sub-streams.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// mt19937_64 with hand-rolled distributions. The engine itself is fully
// specified by the standard; std::*_distribution is not, and results here
// must replay bit-for-bit across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // True with probability p (53-bit resolution).
  bool coin(double p) {
    return static_cast<double>(next() >> 11) * 0x1.0p-53 < p;
  }

  bool fair() { return (next() & 1u) != 0; }

  // Uniform in [0, m). m = 0 is a caller bug; returns 0.
  std::uint64_t below(std::uint64_t m) {
    if (m == 0) return 0;
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * m) >> 64);
  }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace timm
