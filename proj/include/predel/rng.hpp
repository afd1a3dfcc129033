#pragma once

#include <cstdint>
#include <random>

namespace predel {

/// Deterministic random engine used throughout the library. All seed
/// contracts are per engine implementation (this library + libstdc++ build);
/// no cross-implementation bitstream is promised.
using Engine = std::mt19937_64;

/// SplitMix64 finalizer. Bijective 64-bit mixing; consecutive inputs land
/// far apart, which is what makes the child-seed scheme below safe.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed for an independent child stream (replication r, resample j, ...).
/// Children of one seed never collide with the parent or each other for any
/// realistic stream count, and the derivation is order-free: stream k's seed
/// does not depend on how many siblings were created before it.
inline std::uint64_t child_seed(std::uint64_t seed, std::uint64_t stream) {
  return mix64(seed ^ mix64(stream));
}

/// Engine construction always routes the user seed through mix64 so that
/// small consecutive seeds (0, 1, 2, ...) give unrelated streams.
inline Engine make_engine(std::uint64_t seed) { return Engine(mix64(seed)); }

/// One N(0,1) draw.
inline double draw_normal(Engine& rng) {
  return std::normal_distribution<double>(0.0, 1.0)(rng);
}

/// One Student-t draw with nu > 0 degrees of freedom. Non-integer and
/// sub-2 nu are fine; the variance is infinite for nu <= 2 by design.
inline double draw_student_t(double nu, Engine& rng) {
  return std::student_t_distribution<double>(nu)(rng);
}

}  // namespace predel
