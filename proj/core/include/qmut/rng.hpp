#pragma once

#include <cstdint>
#include <string_view>

namespace qmut {

// Counter-based generator (splitmix64). Every draw is a pure function of the
// seed and the draw index, so results are identical across platforms and the
// stream can be split per task without coordination. The algorithm name is
// recorded in run metadata as "splitmix64".
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 bits of mantissa.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform in [0, bound). Rejection-free modulo bias is negligible for the
  // bounds used here (< 2^32), but reject anyway to keep draws exact.
  std::uint64_t next_below(std::uint64_t bound) {
    if (bound == 0) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v;
    do {
      v = next_u64();
    } while (v >= limit);
    return v % bound;
  }

 private:
  std::uint64_t state_;
};

inline constexpr const char* kRngAlgorithm = "splitmix64";

// FNV-1a 64-bit hash, the reference per-task seed derivation:
// task_seed = master_seed XOR fnv1a64("circuit|mutant|input|backend|run").
inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

inline std::uint64_t task_seed(std::uint64_t master, std::string_view tag) {
  return master ^ fnv1a64(tag);
}

}  // namespace qmut
