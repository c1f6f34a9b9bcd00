#pragma once

// Seeded randomness with named substreams.  Every randomized routine in the
// library draws from a stream derived from (root seed, stream name), so a
// single recorded seed reproduces a whole run even when checks execute in a
// different order.

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace idelic {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

class SeedSplitter {
 public:
  explicit SeedSplitter(std::uint64_t root) : root_(root) {}
  std::mt19937_64 stream(std::string_view name) const {
    return std::mt19937_64(splitmix64(root_ ^ fnv1a(name)));
  }
  std::uint64_t root() const { return root_; }

 private:
  std::uint64_t root_;
};

// Unbiased-enough and, more importantly, implementation-independent.
inline std::uint64_t rand_below(std::mt19937_64& rng, std::uint64_t n) {
  return n ? rng() % n : 0;
}

}  // namespace idelic
