#include "commands.hpp"

#include <iostream>
#include <sstream>

#include "orbilearn/datagen.hpp"
#include "orbilearn/json_io.hpp"
#include "orbilearn/learners.hpp"

namespace orbitool {

using nlohmann::json;
using namespace orbilearn;

SolverConfig SolverFlags::to_config() const {
    json j;
    j["mode"] = mode;
    j["exact_max_order"] = exact_max_order;
    j["restarts"] = restarts;
    j["rng_seed"] = rng_seed;
    return solver_from_json(j);
}

SggConfig SggFlags::to_config(const SolverConfig& solver) const {
    SggConfig cfg;
    cfg.schedule = StepSchedule{eta0, tau, power};
    cfg.projection.radius = radius;
    cfg.iterations = iterations;
    cfg.checkpoint_every = checkpoint_every;
    cfg.rng_seed = rng_seed;
    cfg.solver = solver;
    return cfg;
}

namespace {

json witness_json(const Permutation& p) {
    json arr = json::array();
    for (std::size_t i = 0; i < p.size(); ++i) arr.push_back(p(i));
    return arr;
}

// Pair subcommands accept graphs of different orders and pad both to the max.
std::pair<AttributedGraph, AttributedGraph> load_pair(const std::string& a,
                                                      const std::string& b) {
    AttributedGraph x = graph_from_json(read_file(a));
    AttributedGraph y = graph_from_json(read_file(b));
    const std::size_t n = std::max(x.order(), y.order());
    return {pad_to_order(x, n), pad_to_order(y, n)};
}

GraphDataset load_dataset(const std::string& path) {
    return dataset_from_json(read_file(path));
}

void maybe_write_trace(const std::string& trace_path, const SggTrace& trace) {
    if (!trace_path.empty()) write_file(trace_path, trace_to_csv(trace));
}

void print_json(const json& j) { std::cout << j.dump() << "\n"; }

}  // namespace

void cmd_align(const std::string& a, const std::string& b, const SolverFlags& solver) {
    const auto [x, y] = load_pair(a, b);
    const AlignmentResult r = kernel(x, y, solver.to_config());
    print_json({{"value", r.kernel_value}, {"witness", witness_json(r.witness)},
                {"exact", r.exact}});
}

void cmd_dist(const std::string& a, const std::string& b, const SolverFlags& solver) {
    const auto [x, y] = load_pair(a, b);
    const SolverConfig cfg = solver.to_config();
    const AlignmentResult r = kernel(x, y, cfg);
    print_json({{"value", distance(x, y, cfg)}, {"witness", witness_json(r.witness)},
                {"exact", r.exact}});
}

void cmd_ged(const std::string& a, const std::string& b, const SolverFlags& solver) {
    const auto [x, y] = load_pair(a, b);
    const EditPathResult r = ged_best(x, y, solver.to_config());
    print_json({{"value", r.cost}, {"witness", witness_json(r.witness)}, {"exact", r.exact}});
}

void cmd_gen(const std::string& spec_path, std::size_t count, const std::string& out_path) {
    const GeneratorSpec spec = generator_spec_from_json(read_file(spec_path));
    GraphDataset ds;
    if (const auto* p = std::get_if<datagen::PerturbationSpec>(&spec))
        ds = GraphDataset::ingest(datagen::sample(*p, count));
    else if (const auto* m = std::get_if<datagen::MixtureSpec>(&spec))
        ds = datagen::sample_mixture(*m, count);
    else if (const auto* t = std::get_if<TwoClassSpec>(&spec))
        ds = datagen::two_class_adaline_task(t->pos, t->neg, count, t->rng_seed);
    write_file(out_path, dataset_to_json(ds));
    print_json({{"out", out_path}, {"count", ds.graphs.size()},
                {"labeled", ds.has_labels()}});
}

void cmd_mean(const std::string& data_path, const std::string& eval_path,
              const std::string& out_path, const std::string& trace_path,
              const SolverFlags& solver, const SggFlags& sgg) {
    const GraphDataset data = load_dataset(data_path);
    GraphDataset eval;
    if (!eval_path.empty()) eval = load_dataset(eval_path);

    const MeanResult r = estimate_mean(data.graphs, sgg.to_config(solver.to_config()),
                                       eval.graphs);
    write_file(out_path, graph_to_json(r.mean));
    maybe_write_trace(trace_path, r.trace);

    Codebook as_codebook{{r.mean}};
    const double half_sq =
        codebook_distortion(as_codebook, data.graphs, solver.to_config(), Distortion::sq);
    print_json({{"out", out_path}, {"train_distortion_half_sq", half_sq},
                {"train_distortion_sq", 2.0 * half_sq}});
}

void cmd_quantize(const std::string& data_path, const std::string& eval_path, std::size_t k,
                  const std::string& distortion_name_str, const std::string& out_path,
                  const std::string& trace_path, const SolverFlags& solver,
                  const SggFlags& sgg) {
    const GraphDataset data = load_dataset(data_path);
    GraphDataset eval;
    if (!eval_path.empty()) eval = load_dataset(eval_path);
    const Distortion distortion = distortion_from_name(distortion_name_str);

    const QuantizeResult r = quantize(data.graphs, k, sgg.to_config(solver.to_config()),
                                      distortion, eval.graphs);
    write_file(out_path, codebook_to_json(r.codebook));
    maybe_write_trace(trace_path, r.trace);

    json summary = {{"out", out_path}, {"k", k}};
    if (distortion == Distortion::sq) {
        const double half_sq =
            codebook_distortion(r.codebook, data.graphs, solver.to_config(), Distortion::sq);
        summary["train_distortion_half_sq"] = half_sq;
        summary["train_distortion_sq"] = 2.0 * half_sq;
    } else {
        summary["train_distortion"] =
            codebook_distortion(r.codebook, data.graphs, solver.to_config(), Distortion::dist);
    }
    print_json(summary);
}

void cmd_adaline_train(const std::string& data_path, const std::string& eval_path,
                       const std::string& out_path, const std::string& trace_path,
                       const SolverFlags& solver, const SggFlags& sgg) {
    const GraphDataset data = load_dataset(data_path);
    GraphDataset eval;
    const GraphDataset* eval_ptr = nullptr;
    if (!eval_path.empty()) {
        eval = load_dataset(eval_path);
        eval_ptr = &eval;
    }

    const AdalineResult r = adaline_train(data, sgg.to_config(solver.to_config()), eval_ptr);
    write_file(out_path, adaline_to_json(r.model));
    maybe_write_trace(trace_path, r.trace);

    int correct = 0;
    for (std::size_t i = 0; i < data.graphs.size(); ++i)
        if (adaline_predict(r.model, data.graphs[i], solver.to_config()) ==
            static_cast<int>(data.labels[i]))
            ++correct;
    print_json({{"out", out_path},
                {"train_accuracy",
                 static_cast<double>(correct) / static_cast<double>(data.graphs.size())},
                {"bias", r.model.bias}});
}

void cmd_adaline_predict(const std::string& model_path, const std::string& input_path,
                         const SolverFlags& solver) {
    const AdalineModel model = adaline_from_json(read_file(model_path));
    const std::string text = read_file(input_path);

    std::vector<AttributedGraph> inputs;
    const json parsed = json::parse(text);
    if (parsed.is_object() && parsed.contains("vertices")) {
        inputs.push_back(graph_from_json(text));
    } else {
        GraphDataset ds = dataset_from_json(text);
        inputs = std::move(ds.graphs);
    }

    const SolverConfig cfg = solver.to_config();
    json preds = json::array();
    for (AttributedGraph& g : inputs) {
        const AttributedGraph padded =
            g.order() < model.weight.order() ? pad_to_order(g, model.weight.order()) : g;
        preds.push_back(adaline_predict(model, padded, cfg));
    }
    print_json({{"predictions", preds}});
}

void cmd_gradcheck(const std::string& losses_csv, int samples, std::size_t order,
                   std::size_t attr_dim, double h, double tol, std::uint64_t rng_seed,
                   const std::string& out_path, const SolverFlags& solver) {
    json losses = json::array();
    std::stringstream ss(losses_csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) losses.push_back(loss_kind_name(loss_kind_from_name(item)));
    }

    json cfg;
    cfg["losses"] = std::move(losses);
    cfg["samples"] = samples;
    cfg["order"] = order;
    cfg["attr_dim"] = attr_dim;
    cfg["h"] = h;
    cfg["tol"] = tol;
    cfg["rng_seed"] = rng_seed;
    cfg["solver"] = solver_to_json(solver.to_config());

    const json points = run_gradcheck_points(cfg);
    if (!out_path.empty()) write_file(out_path, points.dump(2) + "\n");
    std::cout << points.dump(2) << "\n";
}

void cmd_experiment(const std::string& kind, const std::string& config_path,
                    const std::string& from_manifest, const std::string& out_dir) {
    json manifest;
    if (!from_manifest.empty()) {
        manifest = rerun_from_manifest(json::parse(read_file(from_manifest)), out_dir);
    } else {
        json overrides = json::object();
        if (!config_path.empty()) overrides = json::parse(read_file(config_path));
        const json resolved = resolve_experiment_config(kind, overrides);
        manifest = run_experiment(resolved, out_dir);
    }
    print_json({{"manifest", (std::filesystem::path(out_dir) / "manifest.json").string()},
                {"outputs", manifest.at("outputs").size()}});
}

}  // namespace orbitool
