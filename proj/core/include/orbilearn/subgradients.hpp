#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "orbilearn/alignment.hpp"
#include "orbilearn/attributed_graph.hpp"

namespace orbilearn {

/// Every loss here lifts to a representation-space function whose kinks come
/// from the max over alignments (and, for quantization, the min over
/// centroids). A subgradient is selected from a single witness of that
/// max/min, which makes the selection deterministic and measurable; away
/// from ties it is the classical gradient of the lift.

enum class LossKind {
    sq_half_dist,   // ½ d(x, w)²
    dist,           // d(x, w)
    adaline,        // (y − (k(x,w) + b))²
    quantize_sq,    // ½ min_i d(x, w_i)²
    quantize_dist,  // min_i d(x, w_i)
    mse_map,        // ½ (y − f(x,w))² for a scalar model f
};

const char* loss_kind_name(LossKind kind);
LossKind loss_kind_from_name(const std::string& name);

/// One selected element of the subdifferential of a lifted loss, with the
/// witness that produced it.
struct Subgradient {
    AttributedGraph matrix;        // same shape as the parameter representative
    Permutation witness;           // alignment attaining the defining max
    std::size_t centroid_index = 0;  // min-selection metadata (quantization)
    double loss_value = 0.0;
};

/// Gradient selection for w ↦ k(x, w): the aligned representative of x.
Subgradient subgrad_kernel(const AttributedGraph& x, const AttributedGraph& w,
                           const SolverConfig& cfg);

/// For ½d(x,w)²: matrix = w − apply_permutation(x, P*).
Subgradient subgrad_sq_half_dist(const AttributedGraph& x, const AttributedGraph& w,
                                 const SolverConfig& cfg);

/// For d(x,w): the unit-norm direction (w − x*)/d, or zero at d ≈ 0 where
/// zero belongs to the subdifferential of the nonnegative function.
Subgradient subgrad_dist(const AttributedGraph& x, const AttributedGraph& w,
                         const SolverConfig& cfg);

struct AdalineSubgradient {
    Subgradient weight;
    double bias_grad = 0.0;
};

/// For (y − (k(x,w)+b))²: with residual r = y − (k+b) and x* the aligned
/// representative, weight matrix = −2·r·x* and bias gradient −2·r. This is
/// the descent direction of the loss in (w, b).
AdalineSubgradient subgrad_adaline(const AttributedGraph& x, double label,
                                   const AttributedGraph& w, double bias,
                                   const SolverConfig& cfg);

enum class Distortion { sq, dist };

const char* distortion_name(Distortion d);
Distortion distortion_from_name(const std::string& name);

struct QuantizeSubgradient {
    std::size_t winner = 0;
    Subgradient grad;  // with respect to the winning centroid only
};

/// Winner = argmin_i d(x, codebook[i]) (ties to the lowest index); the
/// returned subgradient updates the winning centroid, all others get zero.
QuantizeSubgradient subgrad_quantize(const AttributedGraph& x,
                                     std::span<const AttributedGraph> codebook,
                                     const SolverConfig& cfg, Distortion distortion);

/// Scalar-valued map on graphs that can report its own lifted value and a
/// parameter-gradient selection at an optimal alignment.
class ScalarGraphModel {
public:
    struct Eval {
        double value = 0.0;
        AttributedGraph weight_grad;  // selection from ∂f/∂w
        double bias_grad = 0.0;
        Permutation witness;
    };

    virtual ~ScalarGraphModel() = default;
    virtual Eval evaluate(const AttributedGraph& x, const AttributedGraph& w,
                          double bias, const SolverConfig& cfg) const = 0;
};

/// The bundled model f(x, (w,b)) = k(x,w) + b.
class KernelScoreModel final : public ScalarGraphModel {
public:
    Eval evaluate(const AttributedGraph& x, const AttributedGraph& w,
                  double bias, const SolverConfig& cfg) const override;
};

struct MseSubgradient {
    Subgradient weight;
    double bias_grad = 0.0;
};

/// Chain rule for ½(y − f(x,w))²: −(y − f̂) times the model's parameter
/// gradient selection. For KernelScoreModel this is half the adaline
/// subgradient.
MseSubgradient subgrad_mse_map(const ScalarGraphModel& model, const AttributedGraph& x,
                               double y_target, const AttributedGraph& w, double bias,
                               const SolverConfig& cfg);

/// A loss evaluation point: parameter representative plus the observation.
/// For quantize kinds, `param` is the centroid under study (codebook[param_index])
/// and the remaining centroids are held fixed.
struct LossPoint {
    LossKind kind = LossKind::sq_half_dist;
    AttributedGraph param;
    AttributedGraph datum;
    double label = 0.0;
    double bias = 0.0;
    std::vector<AttributedGraph> codebook;
    std::size_t param_index = 0;
};

/// Central-difference check of the selected subgradient against the lifted
/// loss. Points where the defining max/min has a near-tie (within tie_tol
/// of the optimum), or where a dist-type loss sits at d ≈ 0, are reported
/// as "nonsmooth point" and the comparison is skipped rather than failed.
struct FiniteDiffReport {
    LossKind kind = LossKind::sq_half_dist;
    double max_deviation = 0.0;
    bool tie_point = false;
    double tie_margin = 0.0;  // gap to the nearest competing selection
    std::string verdict;      // "ok" | "nonsmooth point" | "fail"
};

FiniteDiffReport finite_diff_check(const LossPoint& point, const SolverConfig& cfg,
                                   double h, double tol);

/// Tie-detection band on kernel values; separates genuine nonsmooth points
/// from float noise.
inline constexpr double kTieTolerance = 1e-9;

}  // namespace orbilearn
