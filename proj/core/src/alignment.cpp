#include "orbilearn/alignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "orbilearn/parallel.hpp"
#include "orbilearn/rng.hpp"

namespace orbilearn {

namespace {

void check_alignable(const AttributedGraph& x, const AttributedGraph& y, const char* op) {
    if (x.order() != y.order())
        throw std::invalid_argument(std::string(op) + ": order mismatch (" +
                                    std::to_string(x.order()) + " vs " +
                                    std::to_string(y.order()) + "); pad to a common order first");
    if (x.attr_dim() != y.attr_dim())
        throw std::invalid_argument(std::string(op) + ": attr_dim mismatch (" +
                                    std::to_string(x.attr_dim()) + " vs " +
                                    std::to_string(y.attr_dim()) + ")");
}

void check_exact_cap(std::size_t order, const SolverConfig& cfg, const char* op) {
    if (order > cfg.exact_max_order)
        throw std::invalid_argument(std::string(op) + ": exact mode requires order <= exact_max_order (" +
                                    std::to_string(cfg.exact_max_order) + "), got " +
                                    std::to_string(order));
}

// Σ_{i,j} ⟨x(p(i),p(j)), y(i,j)⟩, summed in the same order frobenius_inner
// uses on apply_permutation(x,p), so witness re-evaluation is bit-identical.
double kernel_objective(const AttributedGraph& x, const AttributedGraph& y,
                        const std::vector<std::size_t>& p) {
    const std::size_t n = x.order(), d = x.attr_dim();
    const double* xc = x.cells().data();
    const double* yc = y.cells().data();
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double* a = xc + (p[i] * n + p[j]) * d;
            const double* b = yc + (i * n + j) * d;
            for (std::size_t c = 0; c < d; ++c) sum += a[c] * b[c];
        }
    return sum;
}

// Σ_{i,j} ‖x(p(i),p(j)) − y(i,j)‖, the edit-path cost of the alignment p.
double edit_objective(const AttributedGraph& x, const AttributedGraph& y,
                      const std::vector<std::size_t>& p) {
    const std::size_t n = x.order(), d = x.attr_dim();
    const double* xc = x.cells().data();
    const double* yc = y.cells().data();
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double* a = xc + (p[i] * n + p[j]) * d;
            const double* b = yc + (i * n + j) * d;
            double sq = 0.0;
            for (std::size_t c = 0; c < d; ++c) {
                const double diff = a[c] - b[c];
                sq += diff * diff;
            }
            sum += std::sqrt(sq);
        }
    return sum;
}

// ‖apply_permutation(x,p) − y‖_F; exactly 0 when the witness aligns the
// representatives cell for cell.
double min_norm_at(const AttributedGraph& x, const AttributedGraph& y,
                   const std::vector<std::size_t>& p) {
    const std::size_t n = x.order(), d = x.attr_dim();
    const double* xc = x.cells().data();
    const double* yc = y.cells().data();
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double* a = xc + (p[i] * n + p[j]) * d;
            const double* b = yc + (i * n + j) * d;
            for (std::size_t c = 0; c < d; ++c) {
                const double diff = a[c] - b[c];
                sum += diff * diff;
            }
        }
    return std::sqrt(sum);
}

template <typename Objective>
std::pair<double, std::vector<std::size_t>> enumerate_best(const AttributedGraph& x,
                                                           const AttributedGraph& y,
                                                           Objective&& objective, bool maximize) {
    const std::size_t n = x.order();
    std::vector<std::size_t> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = i;
    std::vector<std::size_t> best_p = p;
    double best = objective(x, y, p);
    // next_permutation walks lexicographically, so keeping only strict
    // improvements leaves the lexicographically smallest argmax as witness.
    while (std::next_permutation(p.begin(), p.end())) {
        const double v = objective(x, y, p);
        if (maximize ? v > best : v < best) {
            best = v;
            best_p = p;
        }
    }
    return {best, std::move(best_p)};
}

// 2-swap steepest hill climbing from `p`, in place. Returns the objective
// value at the local optimum (recomputed in full at the end).
template <typename Objective>
double hill_climb(const AttributedGraph& x, const AttributedGraph& y,
                  std::vector<std::size_t>& p, Objective&& objective, bool maximize) {
    const std::size_t n = x.order();
    double current = objective(x, y, p);
    const int max_sweeps = 1000;  // strict improvement terminates; guards rounding loops
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double best_value = current;
        std::size_t best_a = 0, best_b = 0;
        bool improved = false;
        for (std::size_t a = 0; a + 1 < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b) {
                std::swap(p[a], p[b]);
                const double v = objective(x, y, p);
                std::swap(p[a], p[b]);
                if (maximize ? v > best_value + 1e-12 : v < best_value - 1e-12) {
                    best_value = v;
                    best_a = a;
                    best_b = b;
                    improved = true;
                }
            }
        if (!improved) break;
        std::swap(p[best_a], p[best_b]);
        current = best_value;
    }
    return objective(x, y, p);
}

// Greedy assignment by vertex-attribute similarity: position i takes the
// unused x-vertex with the best diagonal match, ties to the lowest index.
std::vector<std::size_t> greedy_seed(const AttributedGraph& x, const AttributedGraph& y,
                                     bool maximize) {
    const std::size_t n = x.order(), d = x.attr_dim();
    std::vector<bool> used(n, false);
    std::vector<std::size_t> p(n);
    for (std::size_t i = 0; i < n; ++i) {
        double best = maximize ? -std::numeric_limits<double>::infinity()
                               : std::numeric_limits<double>::infinity();
        std::size_t best_v = n;
        for (std::size_t v = 0; v < n; ++v) {
            if (used[v]) continue;
            auto xv = x.cell(v, v);
            auto yi = y.cell(i, i);
            double score = 0.0;
            if (maximize) {
                for (std::size_t c = 0; c < d; ++c) score += xv[c] * yi[c];
            } else {
                for (std::size_t c = 0; c < d; ++c) {
                    const double diff = xv[c] - yi[c];
                    score += diff * diff;
                }
            }
            if (best_v == n || (maximize ? score > best : score < best)) {
                best = score;
                best_v = v;
            }
        }
        p[i] = best_v;
        used[best_v] = true;
    }
    return p;
}

template <typename Objective>
std::pair<double, std::vector<std::size_t>> multistart_climb(const AttributedGraph& x,
                                                             const AttributedGraph& y,
                                                             Objective&& objective, bool maximize,
                                                             const SolverConfig& cfg) {
    if (cfg.restarts < 1)
        throw std::invalid_argument("heuristic_align: restarts must be >= 1");
    const std::size_t n = x.order();
    const std::size_t runs = static_cast<std::size_t>(cfg.restarts);
    std::vector<double> values(runs);
    std::vector<std::vector<std::size_t>> perms(runs);
    // Restart 0 is the greedy seed; the rest start from seeded random
    // permutations, so runs are independent and may execute concurrently.
    parallel_for(runs, [&](std::size_t r) {
        std::vector<std::size_t> p;
        if (r == 0) {
            p = greedy_seed(x, y, maximize);
        } else {
            RandomEngine rng(mix_seed(cfg.rng_seed, r));
            p = random_permutation(n, rng).map();
        }
        values[r] = hill_climb(x, y, p, objective, maximize);
        perms[r] = std::move(p);
    });
    std::size_t best_r = 0;
    for (std::size_t r = 1; r < runs; ++r)
        if (maximize ? values[r] > values[best_r] : values[r] < values[best_r]) best_r = r;
    return {values[best_r], std::move(perms[best_r])};
}

}  // namespace

AlignmentResult heuristic_align(const AttributedGraph& x, const AttributedGraph& y,
                                const SolverConfig& cfg) {
    check_alignable(x, y, "heuristic_align");
    auto [value, perm] = multistart_climb(
        x, y, [](const auto& a, const auto& b, const auto& p) { return kernel_objective(a, b, p); },
        /*maximize=*/true, cfg);
    return AlignmentResult{value, Permutation(std::move(perm)), false};
}

AlignmentResult kernel(const AttributedGraph& x, const AttributedGraph& y,
                       const SolverConfig& cfg) {
    check_alignable(x, y, "kernel");
    if (cfg.mode == SolverMode::heuristic) return heuristic_align(x, y, cfg);
    check_exact_cap(x.order(), cfg, "kernel");
    auto [value, perm] = enumerate_best(
        x, y, [](const auto& a, const auto& b, const auto& p) { return kernel_objective(a, b, p); },
        /*maximize=*/true);
    return AlignmentResult{value, Permutation(std::move(perm)), true};
}

ExactKernelScan exact_kernel_scan(const AttributedGraph& x, const AttributedGraph& y,
                                  double tie_tol, const SolverConfig& cfg) {
    check_alignable(x, y, "exact_kernel_scan");
    check_exact_cap(x.order(), cfg, "exact_kernel_scan");
    ExactKernelScan scan;
    scan.best = kernel(x, y, SolverConfig{SolverMode::exact, cfg.exact_max_order, cfg.restarts,
                                          cfg.rng_seed});
    const std::size_t n = x.order();
    std::vector<std::size_t> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = i;
    double runner_up = -std::numeric_limits<double>::infinity();
    int near = 0;
    do {
        const double v = kernel_objective(x, y, p);
        if (v >= scan.best.kernel_value - tie_tol) {
            ++near;
        } else if (v > runner_up) {
            runner_up = v;
        }
    } while (std::next_permutation(p.begin(), p.end()));
    scan.near_max_count = near;
    scan.runner_up_gap = std::isfinite(runner_up) ? scan.best.kernel_value - runner_up : 0.0;
    return scan;
}

double distance(const AttributedGraph& x, const AttributedGraph& y, const SolverConfig& cfg) {
    const AlignmentResult aligned = kernel(x, y, cfg);
    const double radicand = frobenius_inner(x, x) - 2.0 * aligned.kernel_value +
                            frobenius_inner(y, y);
    if (radicand < -1e-9)
        throw std::runtime_error("distance: negative radicand " + std::to_string(radicand) +
                                 " signals an inconsistent solver result");
    // The returned value is the norm of the aligned difference, which agrees
    // with √radicand analytically and is exactly 0 on coinciding orbits.
    return min_norm_at(x, y, aligned.witness.map());
}

double edit_cost(const AttributedGraph& x, const AttributedGraph& y, const Permutation& p) {
    check_alignable(x, y, "edit_cost");
    if (p.size() != x.order())
        throw std::invalid_argument("edit_cost: permutation size " + std::to_string(p.size()) +
                                    " does not match order " + std::to_string(x.order()));
    return edit_objective(x, y, p.map());
}

EditPathResult ged_best(const AttributedGraph& x, const AttributedGraph& y,
                        const SolverConfig& cfg) {
    check_alignable(x, y, "ged");
    if (cfg.mode == SolverMode::heuristic) {
        auto [value, perm] = multistart_climb(
            x, y,
            [](const auto& a, const auto& b, const auto& p) { return edit_objective(a, b, p); },
            /*maximize=*/false, cfg);
        return EditPathResult{value, Permutation(std::move(perm)), false};
    }
    check_exact_cap(x.order(), cfg, "ged");
    auto [value, perm] = enumerate_best(
        x, y, [](const auto& a, const auto& b, const auto& p) { return edit_objective(a, b, p); },
        /*maximize=*/false);
    return EditPathResult{value, Permutation(std::move(perm)), true};
}

double ged(const AttributedGraph& x, const AttributedGraph& y, const SolverConfig& cfg) {
    return ged_best(x, y, cfg).cost;
}

}  // namespace orbilearn
