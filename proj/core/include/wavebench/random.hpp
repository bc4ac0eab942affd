#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

#include "wavebench/types.hpp"

namespace wavebench {

using Rng = std::mt19937_64;

/// splitmix64 finalizer.
constexpr std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Independent stream for (seed, i, j, ...). Used so that every trial of
/// an experiment draws from its own generator regardless of execution order.
inline Rng make_rng(std::uint64_t seed, std::initializer_list<std::uint64_t> stream = {}) {
  std::uint64_t s = mix_seed(seed);
  for (std::uint64_t k : stream) s = mix_seed(s ^ mix_seed(k + 0x632be59bd9b4e019ULL));
  return Rng(s);
}

/// CN(0, variance).
inline Complex complex_normal(Rng& rng, double variance = 1.0) {
  std::normal_distribution<double> n(0.0, std::sqrt(variance / 2.0));
  const double re = n(rng);
  const double im = n(rng);
  return {re, im};
}

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace wavebench
