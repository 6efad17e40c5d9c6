#include "orbilearn/sgg.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace orbilearn {

void StepSchedule::validate() const {
    if (!(eta0 > 0.0)) throw std::invalid_argument("StepSchedule: eta0 must be > 0");
    if (!(tau > 0.0)) throw std::invalid_argument("StepSchedule: tau must be > 0");
    // power in (0.5, 1] keeps Ση_t divergent and Ση_t² finite.
    if (!(power > 0.5 && power <= 1.0))
        throw std::invalid_argument("StepSchedule: power must lie in (0.5, 1]");
}

std::string trace_to_csv(const SggTrace& trace) {
    std::string out = "t,eta,risk,step_norm,stationarity\n";
    char buf[256];
    for (const TraceRow& row : trace.rows) {
        std::snprintf(buf, sizeof(buf), "%ld,%.17g,%.17g,%.17g,%.17g\n", row.t, row.eta, row.risk,
                      row.step_norm, row.stationarity);
        out += buf;
    }
    return out;
}

double sq_norm(const AttributedGraph& g) { return frobenius_inner(g, g); }

AttributedGraph project_ball(const AttributedGraph& w, double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("project_ball: radius must be > 0");
    const double norm = std::sqrt(sq_norm(w));
    if (norm <= radius) return w;
    return scaled(w, radius / norm);
}

AttributedGraph drop_outward_normal(const AttributedGraph& grad, const AttributedGraph& at,
                                    double radius) {
    const double at_norm_sq = sq_norm(at);
    const double at_norm = std::sqrt(at_norm_sq);
    if (at_norm < radius - 1e-9 || at_norm_sq == 0.0) return grad;
    // At the boundary the normal cone is the outward ray through `at`. The
    // radial part of grad is removed only when the descent step −grad pushes
    // outward (radial component of grad negative); otherwise descent re-enters
    // the ball and the full gradient stands.
    const double radial = frobenius_inner(grad, at) / at_norm_sq;
    if (radial >= 0.0) return grad;
    return add_scaled(grad, -radial, at);
}

}  // namespace orbilearn
