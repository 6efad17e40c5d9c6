#pragma once

#include <cstdint>
#include <vector>

#include "orbilearn/attributed_graph.hpp"

namespace orbilearn::datagen {

/// One synthetic distribution over the seed graph's neighborhood: Gaussian
/// attribute noise on the nonzero cells (absent edges stay exactly absent),
/// independent presence flips per unordered vertex pair, then an optional
/// uniform random relabeling of the vertices. Sampling is sequential and
/// fully determined by rng_seed.
struct PerturbationSpec {
    AttributedGraph seed_graph;
    double attr_noise_sigma = 0.0;
    double edge_flip_prob = 0.0;
    AttributeVector flip_attr;  // attribute given to flipped-in edges
    bool permute = false;
    std::uint64_t rng_seed = 0;
};

std::vector<AttributedGraph> sample(const PerturbationSpec& spec, std::size_t count);

struct MixtureComponent {
    PerturbationSpec spec;
    double weight = 0.0;
};

/// Weighted mixture of perturbation components. Component choice and all
/// per-sample noise are drawn from the single stream seeded by rng_seed, so
/// the output does not depend on the components' own rng_seed fields.
struct MixtureSpec {
    std::vector<MixtureComponent> components;
    std::uint64_t rng_seed = 0;
};

/// Returned labels are the component indices.
GraphDataset sample_mixture(const MixtureSpec& spec, std::size_t count);

/// Balanced two-component mixture labeled +1 (pos) / −1 (neg).
GraphDataset two_class_adaline_task(const PerturbationSpec& pos,
                                    const PerturbationSpec& neg,
                                    std::size_t count, std::uint64_t rng_seed);

}  // namespace orbilearn::datagen
