#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "orbilearn/sgg.hpp"
#include "orbilearn/subgradients.hpp"

namespace orbilearn {

/// k centroid graphs of one common order. Used as an SGG parameter with the
/// product-of-balls constraint: each centroid is projected independently.
struct Codebook {
    std::vector<AttributedGraph> centroids;

    std::size_t k() const { return centroids.size(); }
};

Codebook add_scaled(const Codebook& a, double s, const Codebook& b);
Codebook scaled(const Codebook& a, double s);
double sq_norm(const Codebook& a);
Codebook project_ball(const Codebook& a, double radius);
Codebook drop_outward_normal(const Codebook& grad, const Codebook& at, double radius);

/// Linear threshold unit on graphs: score(x) = k(x, weight) + bias. As an
/// SGG parameter, (weight, bias) is one point of the augmented space and the
/// ball constraint applies to the joint norm √(‖W‖² + b²).
struct AdalineModel {
    AttributedGraph weight;
    double bias = 0.0;
};

AdalineModel add_scaled(const AdalineModel& a, double s, const AdalineModel& b);
AdalineModel scaled(const AdalineModel& a, double s);
double sq_norm(const AdalineModel& a);
AdalineModel project_ball(const AdalineModel& a, double radius);
AdalineModel drop_outward_normal(const AdalineModel& grad, const AdalineModel& at, double radius);

struct MeanResult {
    AttributedGraph mean;
    SggTrace trace;
};

/// Online mean estimation: SGG on the ½d² loss with a single centroid,
/// initialized at the first sample. The stream is consumed in order (then
/// cyclically), capped at cfg.iterations steps; with the sample_mean
/// schedule and one pass this is the aligned running mean.
MeanResult estimate_mean(std::span<const AttributedGraph> stream, const SggConfig& cfg,
                         std::span<const AttributedGraph> heldout = {});

struct QuantizeResult {
    Codebook codebook;
    SggTrace trace;
};

/// Online competitive learning: each step updates only the centroid nearest
/// to the observation. Centroids start at the first k pairwise-distinct
/// samples (distance > 1e−6); the k = 1 path is bit-identical to
/// estimate_mean under the same config.
QuantizeResult quantize(std::span<const AttributedGraph> stream, std::size_t k,
                        const SggConfig& cfg, Distortion distortion,
                        std::span<const AttributedGraph> heldout = {});

struct AdalineResult {
    AdalineModel model;
    SggTrace trace;
};

/// SGG on (weight, bias) jointly for the (y − (k(x,w)+b))² loss; bias moves
/// with the same η_t. Labels must be ±1. Starts from the zero model.
AdalineResult adaline_train(const GraphDataset& stream, const SggConfig& cfg,
                            const GraphDataset* heldout = nullptr);

/// sign(k(x, weight) + bias); an exact zero score maps to +1.
int adaline_predict(const AdalineModel& model, const AttributedGraph& x,
                    const SolverConfig& cfg);

/// Batch alternation baseline: assign every graph to its nearest centroid,
/// then recentre each cluster with a full-pass estimate_mean (sample-mean
/// schedule). Stops when assignments stabilize or after `rounds`.
Codebook batch_kcentroids(std::span<const AttributedGraph> dataset, std::size_t k,
                          int rounds, const SggConfig& cfg);

/// Nearest-centroid index under d(x, centroid), ties to the lowest index.
std::size_t nearest_centroid(const AttributedGraph& x, const Codebook& codebook,
                             const SolverConfig& cfg);

/// Mean min-distance distortion of a codebook over a dataset: ½ min_i d²
/// for Distortion::sq, min_i d for Distortion::dist.
double codebook_distortion(const Codebook& codebook, std::span<const AttributedGraph> data,
                           const SolverConfig& cfg, Distortion distortion);

}  // namespace orbilearn
