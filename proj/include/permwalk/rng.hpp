#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace permwalk {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Derives an independent stream from (seed, stream); used so parallel
// workers and per-trial generators are reproducible regardless of worker
// count or execution order.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed ^ splitmix64(stream + 0x9e3779b97f4a7c15ULL));
}

inline std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream = 0) {
  return std::mt19937_64{mix_seed(seed, stream)};
}

// Unbiased draw from {0, ..., bound-1}. Avoids std distribution objects,
// whose output is implementation-defined, so seeded runs are reproducible
// across standard libraries.
inline std::uint64_t uniform_below(std::mt19937_64& eng, std::uint64_t bound) {
  const std::uint64_t limit = (~std::uint64_t{0} / bound) * bound;
  std::uint64_t x = eng();
  while (x >= limit) x = eng();
  return x % bound;
}

// Fisher-Yates with the deterministic draw above.
inline std::vector<int> random_permutation(int size, std::mt19937_64& eng) {
  std::vector<int> p(size);
  for (int i = 0; i < size; ++i) p[i] = i;
  for (int i = size - 1; i > 0; --i) {
    const int j = static_cast<int>(uniform_below(eng, static_cast<std::uint64_t>(i) + 1));
    std::swap(p[i], p[j]);
  }
  return p;
}

}  // namespace permwalk
