#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string_view>

namespace incent {

// 64-bit FNV-1a over a stream tag, used to derive named substream seeds.
inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Deterministic random stream. The engine is std::mt19937_64, whose output
// sequence the standard pins bit-exactly; all distribution helpers are
// hand-rolled on top of it so draws never depend on library internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // Named substream derived from a master seed. Streams with distinct tags
  // are independent: consuming one never shifts draws in another.
  static Rng stream(std::uint64_t master_seed, std::string_view tag) {
    std::uint64_t s = master_seed ^ fnv1a64(tag);
    return Rng(splitmix64(s));
  }

  std::uint64_t next_u64() { return eng_(); }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  // Uniform in (0, 1].
  double uniform_open_closed() { return 1.0 - uniform01(); }

  // Uniform integer in [lo, hi], inclusive, rejection-sampled (no modulo bias).
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw std::invalid_argument("uniform_int: lo > hi");
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return lo + static_cast<std::int64_t>(eng_());  // full 2^64 range
    std::uint64_t x = eng_();
    const std::uint64_t rem = (UINT64_MAX % span + 1) % span;  // 2^64 mod span
    if (rem != 0) {
      while (x >= 0ull - rem) x = eng_();
    }
    return lo + static_cast<std::int64_t>(x % span);
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace incent
