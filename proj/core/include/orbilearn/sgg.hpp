#pragma once

#include <cmath>
#include <concepts>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "orbilearn/alignment.hpp"
#include "orbilearn/attributed_graph.hpp"
#include "orbilearn/parallel.hpp"
#include "orbilearn/rng.hpp"

namespace orbilearn {

/// η_t = eta0 / (1 + t/tau)^power. With power in (0.5, 1] the series Ση_t
/// diverges while Ση_t² converges, which is what the stochastic iteration
/// needs; the constructor-facing validate() rejects anything else.
struct StepSchedule {
    double eta0 = 0.5;
    double tau = 50.0;
    double power = 1.0;

    double eta(long t) const { return eta0 / std::pow(1.0 + static_cast<double>(t) / tau, power); }
    void validate() const;

    /// {1, 1, 1}: η_t = 1/(1+t). Starting the iteration counter at t = 1,
    /// this reproduces the running sample mean in the Euclidean case.
    static StepSchedule sample_mean() { return {1.0, 1.0, 1.0}; }
};

/// Frobenius-norm ball, the constraint set. It is convex, bounded, and (the
/// action being isometric) a union of orbits, so projecting a representative
/// is orbit-consistent. radius <= 0 means "resolve automatically" at the
/// learner level (10 × the longest sample); the engine itself requires a
/// positive radius.
struct ProjectionBall {
    double radius = 0.0;
};

struct SggConfig {
    StepSchedule schedule;
    ProjectionBall projection;
    long iterations = 1000;
    long checkpoint_every = 50;
    std::uint64_t rng_seed = 0;
    SolverConfig solver;
};

struct TraceRow {
    long t = 0;
    double eta = 0.0;
    double risk = std::numeric_limits<double>::quiet_NaN();
    double step_norm = 0.0;          // ‖η_t S_t‖
    double stationarity = std::numeric_limits<double>::quiet_NaN();
};

/// Checkpoint diagnostics of one run. Risk and stationarity are evaluated on
/// a held-out sample, never on the training stream; both are NaN when no
/// held-out sample was supplied.
struct SggTrace {
    std::vector<TraceRow> rows;
    std::uint64_t seed = 0;
    double max_subgrad_norm = 0.0;   // empirical guard for E‖S_t‖² < ∞
};

/// CSV with header t,eta,risk,step_norm,stationarity; floats at full
/// precision so equal runs serialize byte-identically.
std::string trace_to_csv(const SggTrace& trace);

// Ball projection of a single representative: rescale onto the sphere when
// outside, identity otherwise. Idempotent and non-expansive.
AttributedGraph project_ball(const AttributedGraph& w, double radius);
double sq_norm(const AttributedGraph& g);

/// Removes from `grad` the radial component at a boundary point `at` when
/// that component points into the ball (the blocked direction); interior
/// points pass through untouched. The result's norm is the stationarity
/// surrogate: it vanishes exactly when −grad lies in the normal cone.
AttributedGraph drop_outward_normal(const AttributedGraph& grad,
                                    const AttributedGraph& at, double radius);

/// Parameter types the engine can drive: representation-space arithmetic,
/// squared norm, ball projection, and the boundary correction above.
template <typename P>
concept SggParam = requires(const P& p, double a) {
    { add_scaled(p, a, p) } -> std::convertible_to<P>;
    { scaled(p, a) } -> std::convertible_to<P>;
    { sq_norm(p) } -> std::convertible_to<double>;
    { project_ball(p, a) } -> std::convertible_to<P>;
    { drop_outward_normal(p, p, a) } -> std::convertible_to<P>;
};

template <typename P>
struct SubgradStep {
    P direction;       // selected generalized gradient S_t
    double loss = 0.0;
};

/// One learning problem: a training stream, a single-valued subgradient
/// selection, and a plain loss for risk evaluation.
template <typename Obs, typename P>
struct SggProblem {
    std::function<Obs(RandomEngine&)> sample;
    std::function<SubgradStep<P>(const Obs&, const P&)> subgrad;
    std::function<double(const Obs&, const P&)> loss;
};

template <typename P>
struct SggResult {
    P param;
    SggTrace trace;
    /// Parameter snapshot per trace row (same indexing).
    std::vector<P> snapshots;
};

/// Mean loss over a sample; deterministic ordered reduction.
template <typename Obs, typename P>
double estimate_risk(const P& param, std::span<const Obs> sample,
                     const std::function<double(const Obs&, const P&)>& loss) {
    if (sample.empty()) throw std::invalid_argument("estimate_risk: eval_sample is empty");
    std::vector<double> values(sample.size());
    parallel_for(sample.size(), [&](std::size_t i) { values[i] = loss(sample[i], param); });
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(sample.size());
}

/// Norm of the sample-averaged subgradient selection after the boundary
/// correction. A surrogate for the necessary extremum condition, not a
/// membership test of the limit set.
template <typename Obs, SggParam P>
double stationarity_diagnostic(const P& param, std::span<const Obs> sample,
                               const std::function<SubgradStep<P>(const Obs&, const P&)>& subgrad,
                               double radius) {
    if (sample.empty()) throw std::invalid_argument("stationarity_diagnostic: eval_sample is empty");
    std::vector<P> directions(sample.size());
    parallel_for(sample.size(), [&](std::size_t i) {
        directions[i] = subgrad(sample[i], param).direction;
    });
    P sum = directions[0];
    for (std::size_t i = 1; i < directions.size(); ++i) sum = add_scaled(sum, 1.0, directions[i]);
    P avg = scaled(sum, 1.0 / static_cast<double>(sample.size()));
    P corrected = drop_outward_normal(avg, param, radius);
    return std::sqrt(sq_norm(corrected));
}

/// Projected stochastic generalized gradient iteration
///   W_{t+1} = Π(W_t − η_t S_t),  t = 1..iterations.
/// Deterministic given cfg.rng_seed; every iterate stays inside the ball.
/// A checkpoint row (and parameter snapshot) is recorded at t = 0, every
/// checkpoint_every steps, and at the final step.
template <typename Obs, SggParam P>
SggResult<P> run_sgg(const SggProblem<Obs, P>& problem, P init, const SggConfig& cfg,
                     std::span<const Obs> heldout = {}) {
    cfg.schedule.validate();
    if (cfg.iterations < 1) throw std::invalid_argument("run_sgg: iterations must be >= 1");
    if (cfg.checkpoint_every < 1) throw std::invalid_argument("run_sgg: checkpoint_every must be >= 1");
    const double radius = cfg.projection.radius;
    if (!(radius > 0.0)) throw std::invalid_argument("run_sgg: projection.radius must be > 0");

    RandomEngine rng(cfg.rng_seed);
    SggResult<P> out{project_ball(std::move(init), radius), SggTrace{}, {}};
    out.trace.seed = cfg.rng_seed;

    auto checkpoint = [&](long t, double eta, double step_norm) {
        TraceRow row;
        row.t = t;
        row.eta = eta;
        row.step_norm = step_norm;
        if (!heldout.empty()) {
            row.risk = estimate_risk<Obs, P>(out.param, heldout, problem.loss);
            row.stationarity =
                stationarity_diagnostic<Obs, P>(out.param, heldout, problem.subgrad, radius);
        }
        out.trace.rows.push_back(row);
        out.snapshots.push_back(out.param);
    };

    checkpoint(0, 0.0, 0.0);
    for (long t = 1; t <= cfg.iterations; ++t) {
        try {
            const Obs obs = problem.sample(rng);
            const SubgradStep<P> step = problem.subgrad(obs, out.param);
            const double eta = cfg.schedule.eta(t);
            const double subgrad_norm = std::sqrt(sq_norm(step.direction));
            if (subgrad_norm > out.trace.max_subgrad_norm)
                out.trace.max_subgrad_norm = subgrad_norm;
            out.param = project_ball(add_scaled(out.param, -eta, step.direction), radius);
            if (t % cfg.checkpoint_every == 0 || t == cfg.iterations)
                checkpoint(t, eta, eta * subgrad_norm);
        } catch (const std::exception& e) {
            throw std::runtime_error("run_sgg: iteration " + std::to_string(t) + ": " + e.what());
        }
    }
    return out;
}

}  // namespace orbilearn
