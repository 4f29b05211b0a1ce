#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "randnla/types.hpp"

namespace randnla {

/// splitmix64 step; used to derive independent seed streams and the
/// per-column hash/sign pairs of the count sketch.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Deterministic sub-seed for stream `stream` of master seed `seed`.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t s = seed ^ (0x6a09e667f3bcc909ULL + stream * 0x9e3779b97f4a7c15ULL);
  return splitmix64(s);
}

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

DenseMatrix gaussian_matrix(Index rows, Index cols, Rng& rng);

/// Random vector with unit Euclidean norm (Gaussian direction).
Vector gaussian_unit_vector(Index dim, Rng& rng);

/// `count` distinct indices from [0, n), sorted ascending.
std::vector<Index> sample_without_replacement(Index n, Index count, Rng& rng);

/// `count` indices from [0, n) with replacement, proportional to `weights`.
std::vector<Index> sample_with_replacement(const Vector& weights, Index count,
                                           Rng& rng);

}  // namespace randnla
