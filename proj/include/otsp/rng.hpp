#pragma once

#include <cstdint>
#include <random>

namespace otsp {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Substream `index` of `seed`; streams for different indices are unrelated.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

// mt19937_64 output is fixed by the standard; the std distributions are not,
// so the helpers below are written out to keep results identical across stdlibs.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  // Uniform in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    std::uint64_t limit = bound * (UINT64_MAX / bound);
    std::uint64_t r;
    do r = eng_(); while (r >= limit);
    return r % bound;
  }

  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace otsp
