#include "orbilearn/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace orbilearn {

double normal_sample(RandomEngine& rng, double mean, double stddev) {
    // u1 is kept away from 0 so the log is finite.
    const double u1 = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
    const double u2 = uniform_unit(rng);
    const double r = std::sqrt(-2.0 * std::log(u1));
    return mean + stddev * r * std::cos(2.0 * std::numbers::pi * u2);
}

std::size_t uniform_index(RandomEngine& rng, std::size_t n) {
    if (n == 0) throw std::invalid_argument("uniform_index: n must be positive");
    // Bias is O(n / 2^53), negligible at the sizes used here.
    std::size_t i = static_cast<std::size_t>(uniform_unit(rng) * static_cast<double>(n));
    return i < n ? i : n - 1;
}

Permutation random_permutation(std::size_t n, RandomEngine& rng) {
    std::vector<std::size_t> m(n);
    for (std::size_t i = 0; i < n; ++i) m[i] = i;
    for (std::size_t i = n; i > 1; --i) std::swap(m[i - 1], m[uniform_index(rng, i)]);
    return Permutation(std::move(m));
}

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream) {
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace orbilearn
