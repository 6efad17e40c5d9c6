#include "orbilearn/learners.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>

#include "orbilearn/parallel.hpp"

namespace orbilearn {

Codebook add_scaled(const Codebook& a, double s, const Codebook& b) {
    if (a.k() != b.k()) throw std::invalid_argument("Codebook add_scaled: size mismatch");
    Codebook out;
    out.centroids.reserve(a.k());
    for (std::size_t i = 0; i < a.k(); ++i)
        out.centroids.push_back(add_scaled(a.centroids[i], s, b.centroids[i]));
    return out;
}

Codebook scaled(const Codebook& a, double s) {
    Codebook out;
    out.centroids.reserve(a.k());
    for (const AttributedGraph& c : a.centroids) out.centroids.push_back(scaled(c, s));
    return out;
}

double sq_norm(const Codebook& a) {
    double sum = 0.0;
    for (const AttributedGraph& c : a.centroids) sum += sq_norm(c);
    return sum;
}

Codebook project_ball(const Codebook& a, double radius) {
    Codebook out;
    out.centroids.reserve(a.k());
    for (const AttributedGraph& c : a.centroids) out.centroids.push_back(project_ball(c, radius));
    return out;
}

Codebook drop_outward_normal(const Codebook& grad, const Codebook& at, double radius) {
    if (grad.k() != at.k())
        throw std::invalid_argument("Codebook drop_outward_normal: size mismatch");
    Codebook out;
    out.centroids.reserve(grad.k());
    for (std::size_t i = 0; i < grad.k(); ++i)
        out.centroids.push_back(drop_outward_normal(grad.centroids[i], at.centroids[i], radius));
    return out;
}

AdalineModel add_scaled(const AdalineModel& a, double s, const AdalineModel& b) {
    return AdalineModel{add_scaled(a.weight, s, b.weight), a.bias + s * b.bias};
}

AdalineModel scaled(const AdalineModel& a, double s) {
    return AdalineModel{scaled(a.weight, s), a.bias * s};
}

double sq_norm(const AdalineModel& a) { return sq_norm(a.weight) + a.bias * a.bias; }

AdalineModel project_ball(const AdalineModel& a, double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("project_ball: radius must be > 0");
    const double norm = std::sqrt(sq_norm(a));
    if (norm <= radius) return a;
    return scaled(a, radius / norm);
}

AdalineModel drop_outward_normal(const AdalineModel& grad, const AdalineModel& at,
                                 double radius) {
    const double at_sq = sq_norm(at);
    if (std::sqrt(at_sq) < radius - 1e-9 || at_sq == 0.0) return grad;
    const double radial = (frobenius_inner(grad.weight, at.weight) + grad.bias * at.bias) / at_sq;
    if (radial >= 0.0) return grad;
    return add_scaled(grad, -radial, at);
}

namespace {

// Distinctness for centroid initialization: exact distance when enumeration
// is feasible, the configured solver otherwise.
SolverConfig init_solver(const SolverConfig& cfg, std::size_t order) {
    SolverConfig s = cfg;
    if (order <= cfg.exact_max_order) s.mode = SolverMode::exact;
    return s;
}

double auto_radius(std::span<const AttributedGraph> data) {
    double max_len = 0.0;
    for (const AttributedGraph& g : data) max_len = std::max(max_len, length(g));
    return max_len > 0.0 ? 10.0 * max_len : 1.0;
}

// Shared online path of estimate_mean (k = 1) and quantize. The stream is
// consumed in order starting right after the samples used for centroid
// initialization, cycling when cfg.iterations exceeds what is left.
QuantizeResult online_quantize(std::span<const AttributedGraph> stream, std::size_t k,
                               const SggConfig& cfg, Distortion distortion,
                               std::span<const AttributedGraph> heldout) {
    if (stream.empty()) throw std::invalid_argument("quantize: stream is empty");
    if (k < 1) throw std::invalid_argument("quantize: k must be >= 1");
    if (stream.size() < k)
        throw std::invalid_argument("quantize: stream has " + std::to_string(stream.size()) +
                                    " samples, fewer than k = " + std::to_string(k));

    Codebook init;
    std::size_t start = 0;
    if (k == 1) {
        init.centroids.push_back(stream[0]);
        start = 1;
    } else {
        const SolverConfig dist_cfg = init_solver(cfg.solver, stream[0].order());
        for (std::size_t i = 0; i < stream.size() && init.k() < k; ++i) {
            bool distinct = true;
            for (const AttributedGraph& c : init.centroids)
                if (distance(stream[i], c, dist_cfg) <= 1e-6) {
                    distinct = false;
                    break;
                }
            if (distinct) {
                init.centroids.push_back(stream[i]);
                start = i + 1;
            }
        }
        if (init.k() < k)
            throw std::invalid_argument("quantize: stream contains fewer than k = " +
                                        std::to_string(k) + " distinct samples");
    }

    SggConfig run_cfg = cfg;
    if (!(run_cfg.projection.radius > 0.0)) run_cfg.projection.radius = auto_radius(stream);

    const std::size_t n_stream = stream.size();
    auto cursor = std::make_shared<std::size_t>(start % n_stream);

    SggProblem<AttributedGraph, Codebook> problem;
    problem.sample = [stream, cursor, n_stream](RandomEngine&) {
        const AttributedGraph& g = stream[*cursor];
        *cursor = (*cursor + 1) % n_stream;
        return g;
    };
    problem.subgrad = [solver = cfg.solver, distortion](const AttributedGraph& x,
                                                        const Codebook& w) {
        QuantizeSubgradient g = subgrad_quantize(x, w.centroids, solver, distortion);
        Codebook direction;
        direction.centroids.reserve(w.k());
        for (std::size_t i = 0; i < w.k(); ++i)
            direction.centroids.push_back(
                i == g.winner ? g.grad.matrix
                              : AttributedGraph::zeros(w.centroids[i].order(),
                                                       w.centroids[i].attr_dim(),
                                                       w.centroids[i].undirected()));
        return SubgradStep<Codebook>{std::move(direction), g.grad.loss_value};
    };
    problem.loss = [solver = cfg.solver, distortion](const AttributedGraph& x, const Codebook& w) {
        double best = std::numeric_limits<double>::infinity();
        for (const AttributedGraph& c : w.centroids) best = std::min(best, distance(x, c, solver));
        return distortion == Distortion::sq ? 0.5 * best * best : best;
    };

    SggResult<Codebook> result =
        run_sgg<AttributedGraph, Codebook>(problem, std::move(init), run_cfg, heldout);
    return QuantizeResult{std::move(result.param), std::move(result.trace)};
}

}  // namespace

MeanResult estimate_mean(std::span<const AttributedGraph> stream, const SggConfig& cfg,
                         std::span<const AttributedGraph> heldout) {
    if (stream.empty()) throw std::invalid_argument("estimate_mean: stream is empty");
    QuantizeResult r = online_quantize(stream, 1, cfg, Distortion::sq, heldout);
    return MeanResult{std::move(r.codebook.centroids[0]), std::move(r.trace)};
}

QuantizeResult quantize(std::span<const AttributedGraph> stream, std::size_t k,
                        const SggConfig& cfg, Distortion distortion,
                        std::span<const AttributedGraph> heldout) {
    return online_quantize(stream, k, cfg, distortion, heldout);
}

namespace {

struct LabeledObs {
    AttributedGraph graph;
    double label = 0.0;
};

std::vector<LabeledObs> to_labeled(const GraphDataset& ds, const char* op) {
    if (!ds.has_labels())
        throw std::invalid_argument(std::string(op) + ": dataset has no labels");
    std::vector<LabeledObs> out;
    out.reserve(ds.graphs.size());
    for (std::size_t i = 0; i < ds.graphs.size(); ++i) {
        if (ds.labels[i] != 1.0 && ds.labels[i] != -1.0)
            throw std::invalid_argument(std::string(op) + ": label at index " +
                                        std::to_string(i) + " is " +
                                        std::to_string(ds.labels[i]) + ", expected +1 or -1");
        out.push_back({ds.graphs[i], ds.labels[i]});
    }
    return out;
}

}  // namespace

AdalineResult adaline_train(const GraphDataset& stream, const SggConfig& cfg,
                            const GraphDataset* heldout) {
    const std::vector<LabeledObs> train = to_labeled(stream, "adaline_train");
    std::vector<LabeledObs> eval;
    if (heldout != nullptr) eval = to_labeled(*heldout, "adaline_train");

    bool undirected = true;
    for (const AttributedGraph& g : stream.graphs) undirected &= g.undirected();
    AdalineModel init{AttributedGraph::zeros(stream.common_order, stream.attr_dim, undirected),
                      0.0};

    SggConfig run_cfg = cfg;
    if (!(run_cfg.projection.radius > 0.0))
        run_cfg.projection.radius = auto_radius(stream.graphs);

    auto cursor = std::make_shared<std::size_t>(0);
    const std::size_t n = train.size();

    SggProblem<LabeledObs, AdalineModel> problem;
    problem.sample = [&train, cursor, n](RandomEngine&) {
        const LabeledObs& obs = train[*cursor];
        *cursor = (*cursor + 1) % n;
        return obs;
    };
    problem.subgrad = [solver = cfg.solver](const LabeledObs& obs, const AdalineModel& w) {
        AdalineSubgradient g = subgrad_adaline(obs.graph, obs.label, w.weight, w.bias, solver);
        return SubgradStep<AdalineModel>{AdalineModel{std::move(g.weight.matrix), g.bias_grad},
                                         g.weight.loss_value};
    };
    problem.loss = [solver = cfg.solver](const LabeledObs& obs, const AdalineModel& w) {
        const double score = kernel(obs.graph, w.weight, solver).kernel_value + w.bias;
        const double r = obs.label - score;
        return r * r;
    };

    SggResult<AdalineModel> result = run_sgg<LabeledObs, AdalineModel>(
        problem, std::move(init), run_cfg, std::span<const LabeledObs>(eval));
    return AdalineResult{std::move(result.param), std::move(result.trace)};
}

int adaline_predict(const AdalineModel& model, const AttributedGraph& x,
                    const SolverConfig& cfg) {
    const double score = kernel(x, model.weight, cfg).kernel_value + model.bias;
    return score < 0.0 ? -1 : 1;
}

std::size_t nearest_centroid(const AttributedGraph& x, const Codebook& codebook,
                             const SolverConfig& cfg) {
    if (codebook.k() == 0) throw std::invalid_argument("nearest_centroid: empty codebook");
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < codebook.k(); ++i) {
        const double d = distance(x, codebook.centroids[i], cfg);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

double codebook_distortion(const Codebook& codebook, std::span<const AttributedGraph> data,
                           const SolverConfig& cfg, Distortion distortion) {
    if (data.empty()) throw std::invalid_argument("codebook_distortion: data is empty");
    std::vector<double> values(data.size());
    parallel_for(data.size(), [&](std::size_t i) {
        double best = std::numeric_limits<double>::infinity();
        for (const AttributedGraph& c : codebook.centroids)
            best = std::min(best, distance(data[i], c, cfg));
        values[i] = distortion == Distortion::sq ? 0.5 * best * best : best;
    });
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(data.size());
}

Codebook batch_kcentroids(std::span<const AttributedGraph> dataset, std::size_t k, int rounds,
                          const SggConfig& cfg) {
    if (dataset.size() < k)
        throw std::invalid_argument("batch_kcentroids: dataset has " +
                                    std::to_string(dataset.size()) +
                                    " graphs, fewer than k = " + std::to_string(k));
    if (rounds < 1) throw std::invalid_argument("batch_kcentroids: rounds must be >= 1");

    // Same initialization rule as the online path.
    Codebook codebook;
    {
        const SolverConfig dist_cfg = init_solver(cfg.solver, dataset[0].order());
        for (std::size_t i = 0; i < dataset.size() && codebook.k() < k; ++i) {
            bool distinct = true;
            for (const AttributedGraph& c : codebook.centroids)
                if (distance(dataset[i], c, dist_cfg) <= 1e-6) {
                    distinct = false;
                    break;
                }
            if (distinct) codebook.centroids.push_back(dataset[i]);
        }
        if (codebook.k() < k)
            throw std::invalid_argument("batch_kcentroids: dataset contains fewer than k = " +
                                        std::to_string(k) + " distinct graphs");
    }

    std::vector<std::size_t> assignment(dataset.size(), k);
    for (int round = 0; round < rounds; ++round) {
        std::vector<std::size_t> next(dataset.size());
        parallel_for(dataset.size(), [&](std::size_t i) {
            next[i] = nearest_centroid(dataset[i], codebook, cfg.solver);
        });
        if (next == assignment) break;
        assignment = std::move(next);

        for (std::size_t c = 0; c < k; ++c) {
            std::vector<AttributedGraph> members;
            for (std::size_t i = 0; i < dataset.size(); ++i)
                if (assignment[i] == c) members.push_back(dataset[i]);
            if (members.empty()) continue;  // dead centroid: keep the old one
            SggConfig inner = cfg;
            inner.schedule = StepSchedule::sample_mean();
            inner.iterations = std::max<long>(1, static_cast<long>(members.size()) - 1);
            inner.checkpoint_every = inner.iterations;
            inner.projection.radius = 0.0;  // re-resolve per cluster
            codebook.centroids[c] = estimate_mean(members, inner).mean;
        }
    }
    return codebook;
}

}  // namespace orbilearn
