#pragma once

#include <cstdint>

#include "orbilearn/attributed_graph.hpp"

namespace orbilearn {

enum class SolverMode { exact, heuristic };

struct SolverConfig {
    SolverMode mode = SolverMode::exact;
    /// Exact enumeration is refused above this order (n! permutations).
    std::size_t exact_max_order = 10;
    int restarts = 8;
    std::uint64_t rng_seed = 0;
};

/// Alignment value together with the permutation that attains it. The
/// witness applies to the first argument: value = ⟨apply_permutation(x, witness), y⟩.
struct AlignmentResult {
    double kernel_value = 0.0;
    Permutation witness;
    bool exact = false;
};

/// Optimal alignment kernel k(x,y) = max_P ⟨apply_permutation(x,P), y⟩.
/// Exact mode enumerates all permutations and breaks ties toward the
/// lexicographically smallest witness; heuristic mode lower-bounds the
/// maximum (never exceeds it) and is deterministic given cfg.rng_seed.
AlignmentResult kernel(const AttributedGraph& x, const AttributedGraph& y,
                       const SolverConfig& cfg);

/// Intrinsic metric d(x,y) = min_P ‖apply_permutation(x,P) − y‖, computed at
/// the kernel witness. Equals √(l(x)² − 2k(x,y) + l(y)²); the kernel-form
/// radicand is validated and must not fall below −1e−9.
double distance(const AttributedGraph& x, const AttributedGraph& y,
                const SolverConfig& cfg);

/// Cost of the edit path induced by p: Σ_{i,j} ‖x(p(i),p(j)) − y(i,j)‖.
/// Cell pairs where one side is the null attribute contribute deletion or
/// insertion cost, matched non-null pairs substitution cost.
double edit_cost(const AttributedGraph& x, const AttributedGraph& y,
                 const Permutation& p);

/// Graph edit distance: min_P edit_cost(x, y, P). Differs from `distance`
/// in general (sum of cell norms versus norm of the difference matrix);
/// both are exposed.
double ged(const AttributedGraph& x, const AttributedGraph& y,
           const SolverConfig& cfg);

struct EditPathResult {
    double cost = 0.0;
    Permutation witness;
    bool exact = false;
};

/// As ged, but also reporting the minimizing alignment.
EditPathResult ged_best(const AttributedGraph& x, const AttributedGraph& y,
                        const SolverConfig& cfg);

/// Greedy seeding by vertex-attribute similarity followed by 2-swap hill
/// climbing on the kernel objective, best of cfg.restarts starts (the greedy
/// seed plus restarts−1 random ones, ties to the lowest restart index).
AlignmentResult heuristic_align(const AttributedGraph& x, const AttributedGraph& y,
                                const SolverConfig& cfg);

/// Exact enumeration that also counts how many permutations come within
/// tie_tol of the maximum; multiplicity > 1 marks a nonsmooth point of the
/// lifted kernel.
struct ExactKernelScan {
    AlignmentResult best;
    int near_max_count = 0;
    /// Gap between the maximum and the best value attained by a permutation
    /// outside the tie band (0 when everything ties).
    double runner_up_gap = 0.0;
};
ExactKernelScan exact_kernel_scan(const AttributedGraph& x, const AttributedGraph& y,
                                  double tie_tol, const SolverConfig& cfg);

}  // namespace orbilearn
