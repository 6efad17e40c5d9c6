#pragma once

#include <cstdint>
#include <random>

#include "orbilearn/attributed_graph.hpp"

namespace orbilearn {

/// All randomness flows through mt19937_64, whose output stream is fixed by
/// the C++ standard. The helpers below replace std::*_distribution (whose
/// streams vary across standard libraries) with fixed transformations, so a
/// seed identifies one dataset or trace everywhere.
using RandomEngine = std::mt19937_64;

/// Uniform on [0,1) with 53 random bits.
inline double uniform_unit(RandomEngine& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Box–Muller, cosine branch; draws exactly two engine values per call.
double normal_sample(RandomEngine& rng, double mean, double stddev);

/// Uniform on {0..n-1}. n must be positive.
std::size_t uniform_index(RandomEngine& rng, std::size_t n);

/// Fisher–Yates over {0..n-1}; draws n-1 indices.
Permutation random_permutation(std::size_t n, RandomEngine& rng);

/// splitmix64 of base ^ stream-offset; decorrelates derived seeds (restart
/// and experiment sub-streams) without consuming engine state.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace orbilearn
