#include "orbilearn/datagen.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "orbilearn/rng.hpp"

namespace orbilearn::datagen {

namespace {

void validate(const PerturbationSpec& spec) {
    if (spec.seed_graph.order() == 0)
        throw std::invalid_argument("PerturbationSpec: seed_graph is required");
    if (!(spec.attr_noise_sigma >= 0.0) || !std::isfinite(spec.attr_noise_sigma))
        throw std::invalid_argument("PerturbationSpec: attr_noise_sigma must be finite and >= 0");
    if (!(spec.edge_flip_prob >= 0.0 && spec.edge_flip_prob < 1.0))
        throw std::invalid_argument("PerturbationSpec: edge_flip_prob must lie in [0,1)");
    if (spec.edge_flip_prob > 0.0 && spec.flip_attr.size() != spec.seed_graph.attr_dim())
        throw std::invalid_argument("PerturbationSpec: flip_attr dimension " +
                                    std::to_string(spec.flip_attr.size()) +
                                    " does not match attr_dim " +
                                    std::to_string(spec.seed_graph.attr_dim()));
}

// Draw order per sample is fixed: attribute noise over the nonzero cells
// (upper triangle for undirected seeds, mirrored; full matrix otherwise),
// then one presence draw per unordered off-diagonal pair, then the vertex
// relabeling. Only this order makes streams reproducible bit for bit.
AttributedGraph sample_one(const PerturbationSpec& spec, RandomEngine& rng) {
    const AttributedGraph& seed = spec.seed_graph;
    const std::size_t n = seed.order(), d = seed.attr_dim();
    std::vector<double> cells = seed.cells();

    auto cell_base = [&](std::size_t i, std::size_t j) { return (i * n + j) * d; };

    if (spec.attr_noise_sigma > 0.0) {
        if (seed.undirected()) {
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i; j < n; ++j) {
                    if (!seed.cell_nonzero(i, j)) continue;
                    for (std::size_t c = 0; c < d; ++c) {
                        const double noisy = cells[cell_base(i, j) + c] +
                                             normal_sample(rng, 0.0, spec.attr_noise_sigma);
                        cells[cell_base(i, j) + c] = noisy;
                        cells[cell_base(j, i) + c] = noisy;
                    }
                }
        } else {
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    if (!seed.cell_nonzero(i, j)) continue;
                    for (std::size_t c = 0; c < d; ++c)
                        cells[cell_base(i, j) + c] +=
                            normal_sample(rng, 0.0, spec.attr_noise_sigma);
                }
        }
    }

    if (spec.edge_flip_prob > 0.0) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                const double u = uniform_unit(rng);
                if (u >= spec.edge_flip_prob) continue;
                bool present = false;
                for (std::size_t c = 0; c < d; ++c)
                    present |= cells[cell_base(i, j) + c] != 0.0 ||
                               cells[cell_base(j, i) + c] != 0.0;
                for (std::size_t c = 0; c < d; ++c) {
                    const double v = present ? 0.0 : spec.flip_attr[c];
                    cells[cell_base(i, j) + c] = v;
                    cells[cell_base(j, i) + c] = v;
                }
            }
    }

    AttributedGraph g(n, d, std::move(cells), seed.undirected());
    if (spec.permute) g = apply_permutation(g, random_permutation(n, rng));
    return g;
}

std::size_t pick_component(const MixtureSpec& spec, RandomEngine& rng) {
    const double u = uniform_unit(rng);
    double acc = 0.0;
    for (std::size_t c = 0; c < spec.components.size(); ++c) {
        acc += spec.components[c].weight;
        if (u < acc) return c;
    }
    return spec.components.size() - 1;
}

}  // namespace

std::vector<AttributedGraph> sample(const PerturbationSpec& spec, std::size_t count) {
    if (count == 0) throw std::invalid_argument("sample: count must be >= 1");
    validate(spec);
    RandomEngine rng(spec.rng_seed);
    std::vector<AttributedGraph> out;
    out.reserve(count);
    for (std::size_t s = 0; s < count; ++s) out.push_back(sample_one(spec, rng));
    return out;
}

GraphDataset sample_mixture(const MixtureSpec& spec, std::size_t count) {
    if (count == 0) throw std::invalid_argument("sample_mixture: count must be >= 1");
    if (spec.components.empty())
        throw std::invalid_argument("sample_mixture: components must be nonempty");
    double total = 0.0;
    for (const MixtureComponent& comp : spec.components) {
        if (comp.weight < 0.0)
            throw std::invalid_argument("sample_mixture: weights must be nonnegative");
        validate(comp.spec);
        total += comp.weight;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("sample_mixture: weights must sum to 1 (got " +
                                    std::to_string(total) + ")");

    RandomEngine rng(spec.rng_seed);
    std::vector<AttributedGraph> graphs;
    std::vector<double> labels;
    graphs.reserve(count);
    labels.reserve(count);
    for (std::size_t s = 0; s < count; ++s) {
        const std::size_t c = pick_component(spec, rng);
        graphs.push_back(sample_one(spec.components[c].spec, rng));
        labels.push_back(static_cast<double>(c));
    }
    return GraphDataset::ingest(std::move(graphs), std::move(labels));
}

GraphDataset two_class_adaline_task(const PerturbationSpec& pos, const PerturbationSpec& neg,
                                    std::size_t count, std::uint64_t rng_seed) {
    MixtureSpec mix;
    mix.components = {{pos, 0.5}, {neg, 0.5}};
    mix.rng_seed = rng_seed;
    GraphDataset ds = sample_mixture(mix, count);
    for (double& label : ds.labels) label = label == 0.0 ? 1.0 : -1.0;
    return ds;
}

}  // namespace orbilearn::datagen
