#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace dwrosn {

using Rng = std::mt19937_64;

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed of an independent substream, a pure function of the key tuple.
// Every random decision in an experiment draws from a stream keyed by
// (master seed, slot, scheme, candidate or repetition, ...).
constexpr std::uint64_t derive_seed(std::initializer_list<std::uint64_t> key) {
  std::uint64_t h = 0x6a09e667f3bcc908ULL;
  for (std::uint64_t k : key) h = mix64(h ^ mix64(k));
  return h;
}

inline Rng make_rng(std::initializer_list<std::uint64_t> key) {
  return Rng(derive_seed(key));
}

}  // namespace dwrosn
