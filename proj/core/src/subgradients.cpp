#include "orbilearn/subgradients.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace orbilearn {

namespace {

// Distance below which a dist-type loss counts as sitting at its minimum,
// where the square root is not differentiable.
constexpr double kZeroDistanceGuard = 1e-9;
// Guard band for finite differences near d = 0: a step of size h would
// straddle the kink well before the tie tolerance triggers.
constexpr double kFiniteDiffDistanceGuard = 1e-6;

AttributedGraph aligned_representative(const AttributedGraph& x, const AlignmentResult& r) {
    return apply_permutation(x, r.witness);
}

double sq_norm_diff(const AttributedGraph& a, const AttributedGraph& b) {
    const std::vector<double>& ac = a.cells();
    const std::vector<double>& bc = b.cells();
    double sum = 0.0;
    for (std::size_t k = 0; k < ac.size(); ++k) {
        const double diff = ac[k] - bc[k];
        sum += diff * diff;
    }
    return sum;
}

double aligned_distance(const AttributedGraph& w, const AttributedGraph& x_aligned) {
    return std::sqrt(sq_norm_diff(w, x_aligned));
}

}  // namespace

const char* loss_kind_name(LossKind kind) {
    switch (kind) {
        case LossKind::sq_half_dist: return "sq_half_dist";
        case LossKind::dist: return "dist";
        case LossKind::adaline: return "adaline";
        case LossKind::quantize_sq: return "quantize_sq";
        case LossKind::quantize_dist: return "quantize_dist";
        case LossKind::mse_map: return "mse_map";
    }
    return "unknown";
}

LossKind loss_kind_from_name(const std::string& name) {
    if (name == "sq_half_dist") return LossKind::sq_half_dist;
    if (name == "dist") return LossKind::dist;
    if (name == "adaline") return LossKind::adaline;
    if (name == "quantize_sq") return LossKind::quantize_sq;
    if (name == "quantize_dist") return LossKind::quantize_dist;
    if (name == "mse_map") return LossKind::mse_map;
    throw std::invalid_argument("loss_kind_from_name: unknown loss \"" + name + "\"");
}

const char* distortion_name(Distortion d) { return d == Distortion::sq ? "sq" : "dist"; }

Distortion distortion_from_name(const std::string& name) {
    if (name == "sq") return Distortion::sq;
    if (name == "dist") return Distortion::dist;
    throw std::invalid_argument("distortion_from_name: unknown distortion \"" + name + "\"");
}

Subgradient subgrad_kernel(const AttributedGraph& x, const AttributedGraph& w,
                           const SolverConfig& cfg) {
    const AlignmentResult r = kernel(x, w, cfg);
    return Subgradient{aligned_representative(x, r), r.witness, 0, r.kernel_value};
}

Subgradient subgrad_sq_half_dist(const AttributedGraph& x, const AttributedGraph& w,
                                 const SolverConfig& cfg) {
    const AlignmentResult r = kernel(x, w, cfg);
    const AttributedGraph x_star = aligned_representative(x, r);
    const AttributedGraph diff = w - x_star;
    const double loss = 0.5 * sq_norm_diff(w, x_star);
    return Subgradient{diff, r.witness, 0, loss};
}

Subgradient subgrad_dist(const AttributedGraph& x, const AttributedGraph& w,
                         const SolverConfig& cfg) {
    const AlignmentResult r = kernel(x, w, cfg);
    const AttributedGraph x_star = aligned_representative(x, r);
    const double d = aligned_distance(w, x_star);
    if (d <= kZeroDistanceGuard) {
        // 0 is in the subdifferential at the minimum of a nonnegative function.
        return Subgradient{AttributedGraph::zeros(w.order(), w.attr_dim(), w.undirected()),
                           r.witness, 0, d};
    }
    return Subgradient{scaled(w - x_star, 1.0 / d), r.witness, 0, d};
}

AdalineSubgradient subgrad_adaline(const AttributedGraph& x, double label,
                                   const AttributedGraph& w, double bias,
                                   const SolverConfig& cfg) {
    const AlignmentResult r = kernel(x, w, cfg);
    const double residual = label - (r.kernel_value + bias);
    Subgradient g{scaled(aligned_representative(x, r), -2.0 * residual), r.witness, 0,
                  residual * residual};
    return AdalineSubgradient{std::move(g), -2.0 * residual};
}

QuantizeSubgradient subgrad_quantize(const AttributedGraph& x,
                                     std::span<const AttributedGraph> codebook,
                                     const SolverConfig& cfg, Distortion distortion) {
    if (codebook.empty())
        throw std::invalid_argument("subgrad_quantize: codebook must be nonempty");
    std::size_t winner = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < codebook.size(); ++i) {
        const double d = distance(x, codebook[i], cfg);
        if (d < best) {
            best = d;
            winner = i;
        }
    }
    Subgradient g = distortion == Distortion::sq ? subgrad_sq_half_dist(x, codebook[winner], cfg)
                                                 : subgrad_dist(x, codebook[winner], cfg);
    g.centroid_index = winner;
    return QuantizeSubgradient{winner, std::move(g)};
}

ScalarGraphModel::Eval KernelScoreModel::evaluate(const AttributedGraph& x,
                                                  const AttributedGraph& w, double bias,
                                                  const SolverConfig& cfg) const {
    const AlignmentResult r = kernel(x, w, cfg);
    return Eval{r.kernel_value + bias, aligned_representative(x, r), 1.0, r.witness};
}

MseSubgradient subgrad_mse_map(const ScalarGraphModel& model, const AttributedGraph& x,
                               double y_target, const AttributedGraph& w, double bias,
                               const SolverConfig& cfg) {
    const ScalarGraphModel::Eval eval = model.evaluate(x, w, bias, cfg);
    const double residual = y_target - eval.value;
    Subgradient g{scaled(eval.weight_grad, -residual), eval.witness, 0,
                  0.5 * residual * residual};
    return MseSubgradient{std::move(g), -residual * eval.bias_grad};
}

namespace {

struct LiftedLoss {
    const LossPoint& point;
    SolverConfig cfg;  // exact mode: the lift is the true max over alignments

    double operator()(const AttributedGraph& param, double bias) const {
        switch (point.kind) {
            case LossKind::sq_half_dist: {
                const double d = distance(point.datum, param, cfg);
                return 0.5 * d * d;
            }
            case LossKind::dist:
                return distance(point.datum, param, cfg);
            case LossKind::adaline: {
                const double k = kernel(point.datum, param, cfg).kernel_value;
                const double r = point.label - (k + bias);
                return r * r;
            }
            case LossKind::quantize_sq:
            case LossKind::quantize_dist: {
                double best = std::numeric_limits<double>::infinity();
                for (std::size_t i = 0; i < point.codebook.size(); ++i) {
                    const AttributedGraph& centroid =
                        i == point.param_index ? param : point.codebook[i];
                    best = std::min(best, distance(point.datum, centroid, cfg));
                }
                return point.kind == LossKind::quantize_sq ? 0.5 * best * best : best;
            }
            case LossKind::mse_map: {
                const double f = KernelScoreModel{}.evaluate(point.datum, param, bias, cfg).value;
                const double r = point.label - f;
                return 0.5 * r * r;
            }
        }
        throw std::logic_error("LiftedLoss: unhandled loss kind");
    }
};

struct SelectedGradient {
    AttributedGraph matrix;
    double bias_grad = 0.0;
    bool has_bias = false;
};

SelectedGradient select_subgradient(const LossPoint& point, const SolverConfig& cfg) {
    switch (point.kind) {
        case LossKind::sq_half_dist:
            return {subgrad_sq_half_dist(point.datum, point.param, cfg).matrix, 0.0, false};
        case LossKind::dist:
            return {subgrad_dist(point.datum, point.param, cfg).matrix, 0.0, false};
        case LossKind::adaline: {
            auto g = subgrad_adaline(point.datum, point.label, point.param, point.bias, cfg);
            return {std::move(g.weight.matrix), g.bias_grad, true};
        }
        case LossKind::quantize_sq:
        case LossKind::quantize_dist: {
            std::vector<AttributedGraph> codebook = point.codebook;
            if (point.param_index >= codebook.size())
                throw std::invalid_argument("finite_diff_check: param_index out of range");
            codebook[point.param_index] = point.param;
            auto g = subgrad_quantize(point.datum, codebook, cfg,
                                      point.kind == LossKind::quantize_sq ? Distortion::sq
                                                                          : Distortion::dist);
            if (g.winner != point.param_index) {
                // The studied centroid is not the active piece; its partial
                // derivative is identically zero near this point.
                return {AttributedGraph::zeros(point.param.order(), point.param.attr_dim()), 0.0,
                        false};
            }
            return {std::move(g.grad.matrix), 0.0, false};
        }
        case LossKind::mse_map: {
            auto g = subgrad_mse_map(KernelScoreModel{}, point.datum, point.label, point.param,
                                     point.bias, cfg);
            return {std::move(g.weight.matrix), g.bias_grad, true};
        }
    }
    throw std::logic_error("select_subgradient: unhandled loss kind");
}

// Tie diagnosis: the defining max over alignments (and min over centroids)
// must be attained by a single candidate for the lift to be differentiable.
struct TieInfo {
    bool tie = false;
    double margin = std::numeric_limits<double>::infinity();
};

TieInfo diagnose_ties(const LossPoint& point, const SolverConfig& cfg) {
    TieInfo info;
    auto check_alignment = [&](const AttributedGraph& param) {
        const ExactKernelScan scan = exact_kernel_scan(point.datum, param, kTieTolerance, cfg);
        if (scan.near_max_count > 1) info.tie = true;
        if (scan.near_max_count == 1 && scan.runner_up_gap > 0.0)
            info.margin = std::min(info.margin, scan.runner_up_gap);
    };
    switch (point.kind) {
        case LossKind::sq_half_dist:
        case LossKind::adaline:
        case LossKind::mse_map:
            check_alignment(point.param);
            break;
        case LossKind::dist: {
            check_alignment(point.param);
            if (distance(point.datum, point.param, cfg) < kFiniteDiffDistanceGuard)
                info.tie = true;
            break;
        }
        case LossKind::quantize_sq:
        case LossKind::quantize_dist: {
            if (point.codebook.empty() || point.param_index >= point.codebook.size())
                throw std::invalid_argument(
                    "finite_diff_check: quantize loss needs a codebook and a valid param_index");
            std::vector<double> dists(point.codebook.size());
            for (std::size_t i = 0; i < point.codebook.size(); ++i) {
                const AttributedGraph& centroid =
                    i == point.param_index ? point.param : point.codebook[i];
                dists[i] = distance(point.datum, centroid, cfg);
            }
            std::vector<double> sorted = dists;
            std::sort(sorted.begin(), sorted.end());
            if (sorted.size() > 1) {
                const double winner_gap = sorted[1] - sorted[0];
                if (winner_gap <= kTieTolerance)
                    info.tie = true;
                else
                    info.margin = std::min(info.margin, winner_gap);
            }
            const std::size_t winner = static_cast<std::size_t>(
                std::min_element(dists.begin(), dists.end()) - dists.begin());
            const AttributedGraph& w =
                winner == point.param_index ? point.param : point.codebook[winner];
            check_alignment(w);
            if (point.kind == LossKind::quantize_dist && dists[winner] < kFiniteDiffDistanceGuard)
                info.tie = true;
            break;
        }
    }
    if (!std::isfinite(info.margin)) info.margin = 0.0;
    return info;
}

}  // namespace

FiniteDiffReport finite_diff_check(const LossPoint& point, const SolverConfig& cfg, double h,
                                   double tol) {
    if (!(h > 0.0)) throw std::invalid_argument("finite_diff_check: h must be > 0");
    SolverConfig exact_cfg = cfg;
    exact_cfg.mode = SolverMode::exact;

    FiniteDiffReport report;
    report.kind = point.kind;

    const TieInfo ties = diagnose_ties(point, exact_cfg);
    report.tie_margin = ties.margin;
    if (ties.tie) {
        report.tie_point = true;
        report.verdict = "nonsmooth point";
        return report;
    }

    const SelectedGradient selected = select_subgradient(point, exact_cfg);
    const LiftedLoss lift{point, exact_cfg};

    const std::size_t n = point.param.order();
    const std::size_t d = point.param.attr_dim();
    std::vector<double> cells = point.param.cells();
    double max_dev = 0.0;
    for (std::size_t idx = 0; idx < cells.size(); ++idx) {
        const double saved = cells[idx];
        cells[idx] = saved + h;
        const double up = lift(AttributedGraph(n, d, cells, false), point.bias);
        cells[idx] = saved - h;
        const double down = lift(AttributedGraph(n, d, cells, false), point.bias);
        cells[idx] = saved;
        const double fd = (up - down) / (2.0 * h);
        max_dev = std::max(max_dev, std::abs(fd - selected.matrix.cells()[idx]));
    }
    if (selected.has_bias) {
        const AttributedGraph at(n, d, cells, false);
        const double up = lift(at, point.bias + h);
        const double down = lift(at, point.bias - h);
        const double fd = (up - down) / (2.0 * h);
        max_dev = std::max(max_dev, std::abs(fd - selected.bias_grad));
    }
    report.max_deviation = max_dev;
    report.verdict = max_dev <= tol ? "ok" : "fail";
    return report;
}

}  // namespace orbilearn
