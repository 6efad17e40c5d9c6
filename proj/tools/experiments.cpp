#include "experiments.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <stdexcept>
#include <vector>

#include "orbilearn/datagen.hpp"
#include "orbilearn/json_io.hpp"
#include "orbilearn/learners.hpp"
#include "orbilearn/rng.hpp"
#include "orbilearn/subgradients.hpp"
#include "sha256.hpp"

namespace orbitool {

using nlohmann::json;
using namespace orbilearn;

std::string csv_num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

SolverConfig solver_from_json(const json& j) {
    SolverConfig cfg;
    if (j.contains("mode")) {
        const std::string mode = j.at("mode").get<std::string>();
        if (mode == "exact")
            cfg.mode = SolverMode::exact;
        else if (mode == "heuristic")
            cfg.mode = SolverMode::heuristic;
        else
            throw std::invalid_argument("solver.mode must be \"exact\" or \"heuristic\", got \"" +
                                        mode + "\"");
    }
    if (j.contains("exact_max_order")) cfg.exact_max_order = j.at("exact_max_order").get<std::size_t>();
    if (j.contains("restarts")) cfg.restarts = j.at("restarts").get<int>();
    if (j.contains("rng_seed")) cfg.rng_seed = j.at("rng_seed").get<std::uint64_t>();
    return cfg;
}

json solver_to_json(const SolverConfig& cfg) {
    json j;
    j["mode"] = cfg.mode == SolverMode::exact ? "exact" : "heuristic";
    j["exact_max_order"] = cfg.exact_max_order;
    j["restarts"] = cfg.restarts;
    j["rng_seed"] = cfg.rng_seed;
    return j;
}

SggConfig sgg_from_json(const json& j) {
    SggConfig cfg;
    if (j.contains("eta0")) cfg.schedule.eta0 = j.at("eta0").get<double>();
    if (j.contains("tau")) cfg.schedule.tau = j.at("tau").get<double>();
    if (j.contains("power")) cfg.schedule.power = j.at("power").get<double>();
    if (j.contains("radius")) cfg.projection.radius = j.at("radius").get<double>();
    if (j.contains("iterations")) cfg.iterations = j.at("iterations").get<long>();
    if (j.contains("checkpoint_every")) cfg.checkpoint_every = j.at("checkpoint_every").get<long>();
    if (j.contains("rng_seed")) cfg.rng_seed = j.at("rng_seed").get<std::uint64_t>();
    return cfg;
}

json sgg_to_json(const SggConfig& cfg) {
    json j;
    j["eta0"] = cfg.schedule.eta0;
    j["tau"] = cfg.schedule.tau;
    j["power"] = cfg.schedule.power;
    j["radius"] = cfg.projection.radius;
    j["iterations"] = cfg.iterations;
    j["checkpoint_every"] = cfg.checkpoint_every;
    j["rng_seed"] = cfg.rng_seed;
    return j;
}

namespace {

// ---------------------------------------------------------------------------
// Bundled seed graphs

AttributedGraph ring6(const AttributeVector& vattr, const AttributeVector& eattr) {
    std::vector<AttributeVector> vs(6, vattr);
    std::vector<EdgeEntry> es;
    for (std::size_t i = 0; i < 6; ++i) es.push_back({i, (i + 1) % 6, eattr});
    return from_edge_list(vs, es, true);
}

AttributedGraph star6(const AttributeVector& vattr, const AttributeVector& eattr) {
    std::vector<AttributeVector> vs(6, vattr);
    std::vector<EdgeEntry> es;
    for (std::size_t i = 1; i < 6; ++i) es.push_back({0, i, eattr});
    return from_edge_list(vs, es, true);
}

AttributedGraph two_triangles6(const AttributeVector& vattr, const AttributeVector& eattr) {
    std::vector<AttributeVector> vs(6, vattr);
    std::vector<EdgeEntry> es = {{0, 1, eattr}, {1, 2, eattr}, {0, 2, eattr},
                                 {3, 4, eattr}, {4, 5, eattr}, {3, 5, eattr}};
    return from_edge_list(vs, es, true);
}

// order-8 seed for the mean experiments: a ring with two chords and
// pairwise-distinct vertex attributes
AttributedGraph mean_seed8() {
    std::vector<AttributeVector> vs = {{2, 0},  {0, 2},   {2, 2},  {-2, 1},
                                       {1, -2}, {-1, -1}, {2, -1}, {-2, -2}};
    std::vector<EdgeEntry> es;
    for (std::size_t i = 0; i < 8; ++i) es.push_back({i, (i + 1) % 8, {1.0, 1.0}});
    es.push_back({0, 4, {1.0, -1.0}});
    es.push_back({2, 6, {1.0, -1.0}});
    return from_edge_list(vs, es, true);
}

json perturbation_json(const AttributedGraph& seed, double sigma, double flip_prob,
                       const AttributeVector& flip_attr, bool permute) {
    datagen::PerturbationSpec spec;
    spec.seed_graph = seed;
    spec.attr_noise_sigma = sigma;
    spec.edge_flip_prob = flip_prob;
    spec.flip_attr = flip_attr;
    spec.permute = permute;
    return json::parse(generator_spec_to_json(GeneratorSpec(spec)));
}

datagen::PerturbationSpec perturbation_from_config(const json& j, const char* field) {
    const GeneratorSpec spec = generator_spec_from_json(j.dump());
    if (const auto* p = std::get_if<datagen::PerturbationSpec>(&spec)) return *p;
    throw std::invalid_argument(std::string(field) + " must be a perturbation generator spec");
}

json seed_range(int count) {
    json arr = json::array();
    for (int s = 0; s < count; ++s) arr.push_back(s);
    return arr;
}

// recursive object merge; non-objects replace
json merge_config(json base, const json& overrides) {
    if (!base.is_object() || !overrides.is_object()) return overrides;
    for (const auto& [key, value] : overrides.items())
        base[key] = merge_config(base.contains(key) ? base[key] : json(), value);
    return base;
}

// exact when enumeration is feasible; used for error reporting and purity
SolverConfig reporting_solver(const SolverConfig& base, std::size_t order) {
    SolverConfig cfg = base;
    if (order <= cfg.exact_max_order) cfg.mode = SolverMode::exact;
    return cfg;
}

double cluster_purity(const Codebook& codebook, const GraphDataset& data,
                      const SolverConfig& solver) {
    std::map<std::pair<std::size_t, long>, int> counts;
    for (std::size_t i = 0; i < data.graphs.size(); ++i) {
        const std::size_t c = nearest_centroid(data.graphs[i], codebook, solver);
        counts[{c, static_cast<long>(data.labels[i])}]++;
    }
    std::map<std::size_t, int> best;
    for (const auto& [key, n] : counts) best[key.first] = std::max(best[key.first], n);
    int agree = 0;
    for (const auto& [c, n] : best) agree += n;
    return static_cast<double>(agree) / static_cast<double>(data.graphs.size());
}

struct OutputCollector {
    std::filesystem::path dir;
    json outputs = json::array();

    void add(const std::string& name, const std::string& content) {
        write_file(dir / name, content);
        json entry;
        entry["path"] = name;
        entry["sha256"] = sha256_hex(content);
        outputs.push_back(std::move(entry));
    }
};

// ---------------------------------------------------------------------------
// Experiment drivers

void run_mean_consistency(const json& cfg, OutputCollector& out) {
    const datagen::PerturbationSpec base_spec = perturbation_from_config(cfg.at("spec"), "spec");
    const SolverConfig solver = solver_from_json(cfg.at("solver"));
    const SolverConfig report = reporting_solver(solver, base_spec.seed_graph.order());
    const std::vector<long> ns = cfg.at("ns").get<std::vector<long>>();
    const std::vector<std::uint64_t> seeds = cfg.at("seeds").get<std::vector<std::uint64_t>>();
    const long heldout_count = cfg.at("heldout_count").get<long>();
    const std::uint64_t data_base = cfg.at("data_seed_base").get<std::uint64_t>();
    const std::uint64_t heldout_base = cfg.at("heldout_seed_base").get<std::uint64_t>();
    const std::uint64_t sgg_base = cfg.at("sgg_seed_base").get<std::uint64_t>();

    std::string csv = "N,seed,error\n";
    for (long n : ns) {
        for (std::uint64_t s : seeds) {
            datagen::PerturbationSpec spec = base_spec;
            spec.rng_seed = mix_seed(data_base + static_cast<std::uint64_t>(n), s);
            const auto data = datagen::sample(spec, static_cast<std::size_t>(n));
            datagen::PerturbationSpec heldout_spec = base_spec;
            heldout_spec.rng_seed = mix_seed(heldout_base + static_cast<std::uint64_t>(n), s);
            const auto heldout =
                datagen::sample(heldout_spec, static_cast<std::size_t>(heldout_count));

            SggConfig run_cfg;
            run_cfg.schedule.eta0 = cfg.at("schedule").at("eta0").get<double>();
            run_cfg.schedule.tau = cfg.at("schedule").at("tau").get<double>();
            run_cfg.schedule.power = cfg.at("schedule").at("power").get<double>();
            run_cfg.projection.radius = cfg.at("radius").get<double>();
            run_cfg.iterations = std::max<long>(1, n - 1);
            run_cfg.checkpoint_every = std::max<long>(1, (n - 1) / 4);
            run_cfg.rng_seed = mix_seed(sgg_base, s);
            run_cfg.solver = solver;

            const MeanResult result = estimate_mean(data, run_cfg, heldout);
            const double error = distance(result.mean, base_spec.seed_graph, report);
            csv += std::to_string(n) + "," + std::to_string(s) + "," + csv_num(error) + "\n";
            out.add("trace_N" + std::to_string(n) + "_s" + std::to_string(s) + ".csv",
                    trace_to_csv(result.trace));
        }
    }
    out.add("mean_consistency.csv", csv);
}

void run_quantize_experiment(const json& cfg, OutputCollector& out) {
    const GeneratorSpec gen = generator_spec_from_json(cfg.at("mixture").dump());
    const auto* mix = std::get_if<datagen::MixtureSpec>(&gen);
    if (mix == nullptr) throw std::invalid_argument("mixture must be a mixture generator spec");
    const SolverConfig solver = solver_from_json(cfg.at("solver"));
    const std::size_t k = cfg.at("k").get<std::size_t>();
    const Distortion distortion = distortion_from_name(cfg.at("distortion").get<std::string>());
    const std::size_t train_count = cfg.at("train_count").get<std::size_t>();
    const std::size_t heldout_count = cfg.at("heldout_count").get<std::size_t>();
    const std::vector<std::uint64_t> seeds = cfg.at("seeds").get<std::vector<std::uint64_t>>();
    const std::uint64_t data_base = cfg.at("data_seed_base").get<std::uint64_t>();
    const std::uint64_t heldout_base = cfg.at("heldout_seed_base").get<std::uint64_t>();
    const std::uint64_t sgg_base = cfg.at("sgg_seed_base").get<std::uint64_t>();
    const int batch_rounds = cfg.at("batch_rounds").get<int>();

    std::string csv = "seed,purity,batch_purity,distortion\n";
    for (std::uint64_t s : seeds) {
        datagen::MixtureSpec train_spec = *mix;
        train_spec.rng_seed = mix_seed(data_base, s);
        const GraphDataset train = datagen::sample_mixture(train_spec, train_count);
        datagen::MixtureSpec heldout_spec = *mix;
        heldout_spec.rng_seed = mix_seed(heldout_base, s);
        const GraphDataset heldout = datagen::sample_mixture(heldout_spec, heldout_count);

        SggConfig run_cfg = sgg_from_json(cfg.at("sgg"));
        run_cfg.rng_seed = mix_seed(sgg_base, s);
        run_cfg.solver = solver;

        const QuantizeResult result = quantize(train.graphs, k, run_cfg, distortion,
                                               heldout.graphs);
        const SolverConfig report = reporting_solver(solver, train.common_order);
        const double purity = cluster_purity(result.codebook, train, report);
        const Codebook batch = batch_kcentroids(train.graphs, k, batch_rounds, run_cfg);
        const double batch_purity = cluster_purity(batch, train, report);
        const double final_distortion =
            codebook_distortion(result.codebook, heldout.graphs, report, distortion);

        csv += std::to_string(s) + "," + csv_num(purity) + "," + csv_num(batch_purity) + "," +
               csv_num(final_distortion) + "\n";
        out.add("trace_s" + std::to_string(s) + ".csv", trace_to_csv(result.trace));
    }
    out.add("quantize.csv", csv);
}

void run_adaline_experiment(const json& cfg, OutputCollector& out) {
    const GeneratorSpec gen = generator_spec_from_json(cfg.at("task").dump());
    const auto* task = std::get_if<TwoClassSpec>(&gen);
    if (task == nullptr) throw std::invalid_argument("task must be a two_class generator spec");
    const SolverConfig solver = solver_from_json(cfg.at("solver"));
    const std::size_t train_count = cfg.at("train_count").get<std::size_t>();
    const std::size_t heldout_count = cfg.at("heldout_count").get<std::size_t>();
    const std::vector<std::uint64_t> seeds = cfg.at("seeds").get<std::vector<std::uint64_t>>();
    const std::uint64_t data_base = cfg.at("data_seed_base").get<std::uint64_t>();
    const std::uint64_t heldout_base = cfg.at("heldout_seed_base").get<std::uint64_t>();
    const std::uint64_t sgg_base = cfg.at("sgg_seed_base").get<std::uint64_t>();

    std::string csv = "seed,accuracy,final_risk\n";
    for (std::uint64_t s : seeds) {
        const GraphDataset train = datagen::two_class_adaline_task(task->pos, task->neg,
                                                                   train_count,
                                                                   mix_seed(data_base, s));
        const GraphDataset heldout = datagen::two_class_adaline_task(task->pos, task->neg,
                                                                     heldout_count,
                                                                     mix_seed(heldout_base, s));

        SggConfig run_cfg = sgg_from_json(cfg.at("sgg"));
        run_cfg.rng_seed = mix_seed(sgg_base, s);
        run_cfg.solver = solver;

        const AdalineResult result = adaline_train(train, run_cfg, &heldout);
        const SolverConfig report = reporting_solver(solver, train.common_order);
        int correct = 0;
        for (std::size_t i = 0; i < train.graphs.size(); ++i)
            if (adaline_predict(result.model, train.graphs[i], report) ==
                static_cast<int>(train.labels[i]))
                ++correct;
        const double accuracy =
            static_cast<double>(correct) / static_cast<double>(train.graphs.size());
        const double final_risk = result.trace.rows.back().risk;

        csv += std::to_string(s) + "," + csv_num(accuracy) + "," + csv_num(final_risk) + "\n";
        out.add("trace_s" + std::to_string(s) + ".csv", trace_to_csv(result.trace));
    }
    out.add("adaline.csv", csv);
}

void run_distance_matrix(const json& cfg, OutputCollector& out) {
    const json& data_cfg = cfg.at("data");
    GraphDataset data;
    if (data_cfg.contains("path")) {
        data = dataset_from_json(read_file(data_cfg.at("path").get<std::string>()));
    } else if (data_cfg.contains("generator")) {
        const GeneratorSpec gen = generator_spec_from_json(data_cfg.at("generator").dump());
        const std::size_t count = data_cfg.at("count").get<std::size_t>();
        if (const auto* p = std::get_if<datagen::PerturbationSpec>(&gen))
            data = GraphDataset::ingest(datagen::sample(*p, count));
        else if (const auto* m = std::get_if<datagen::MixtureSpec>(&gen))
            data = datagen::sample_mixture(*m, count);
        else
            throw std::invalid_argument("distance_matrix data.generator kind is unsupported");
    } else {
        throw std::invalid_argument("distance_matrix config needs data.path or data.generator");
    }

    const SolverConfig solver = solver_from_json(cfg.at("solver"));
    const std::size_t n = data.graphs.size();
    std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            m[i][j] = distance(data.graphs[i], data.graphs[j], solver);
            m[j][i] = m[i][j];
        }
    std::string csv;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j > 0) csv += ",";
            csv += csv_num(m[i][j]);
        }
        csv += "\n";
    }
    out.add("distance_matrix.csv", csv);
}

AttributedGraph random_dense_graph(std::size_t order, std::size_t attr_dim, RandomEngine& rng,
                                   double edge_prob) {
    std::vector<double> cells(order * order * attr_dim, 0.0);
    auto base = [&](std::size_t i, std::size_t j) { return (i * order + j) * attr_dim; };
    for (std::size_t i = 0; i < order; ++i)
        for (std::size_t c = 0; c < attr_dim; ++c)
            cells[base(i, i) + c] = normal_sample(rng, 0.0, 1.0);
    for (std::size_t i = 0; i < order; ++i)
        for (std::size_t j = i + 1; j < order; ++j) {
            if (uniform_unit(rng) >= edge_prob) continue;
            for (std::size_t c = 0; c < attr_dim; ++c) {
                const double v = normal_sample(rng, 0.0, 1.0);
                cells[base(i, j) + c] = v;
                cells[base(j, i) + c] = v;
            }
        }
    return AttributedGraph(order, attr_dim, std::move(cells), true);
}

void run_gradcheck_experiment(const json& cfg, OutputCollector& out) {
    const json points = run_gradcheck_points(cfg);
    std::string csv = "loss,deviation,verdict\n";
    for (const json& p : points)
        csv += p.at("loss").get<std::string>() + "," + csv_num(p.at("deviation").get<double>()) +
               "," + p.at("verdict").get<std::string>() + "\n";
    out.add("gradcheck.csv", csv);
    out.add("gradcheck.json", points.dump(2) + "\n");
}

}  // namespace

json run_gradcheck_points(const json& cfg) {
    const std::vector<std::string> losses = cfg.at("losses").get<std::vector<std::string>>();
    const int samples = cfg.at("samples").get<int>();
    const std::size_t order = cfg.at("order").get<std::size_t>();
    const std::size_t attr_dim = cfg.at("attr_dim").get<std::size_t>();
    const double h = cfg.at("h").get<double>();
    const double tol = cfg.at("tol").get<double>();
    const SolverConfig solver = solver_from_json(cfg.at("solver"));
    RandomEngine rng(cfg.at("rng_seed").get<std::uint64_t>());

    json points = json::array();
    for (const std::string& loss : losses) {
        const LossKind kind = loss_kind_from_name(loss);
        for (int i = 0; i < samples; ++i) {
            LossPoint point;
            point.kind = kind;
            point.datum = random_dense_graph(order, attr_dim, rng, 0.5);
            point.param = random_dense_graph(order, attr_dim, rng, 0.5);
            if (kind == LossKind::adaline || kind == LossKind::mse_map) {
                point.label = uniform_unit(rng) < 0.5 ? -1.0 : 1.0;
                point.bias = normal_sample(rng, 0.0, 0.5);
            }
            if (kind == LossKind::quantize_sq || kind == LossKind::quantize_dist) {
                point.codebook = {point.param, random_dense_graph(order, attr_dim, rng, 0.5),
                                  random_dense_graph(order, attr_dim, rng, 0.5)};
                point.param_index = 0;
            }
            const FiniteDiffReport report = finite_diff_check(point, solver, h, tol);
            json entry;
            entry["loss"] = loss;
            entry["deviation"] = report.max_deviation;
            entry["verdict"] = report.verdict;
            points.push_back(std::move(entry));
        }
    }
    return points;
}

json default_experiment_config(const std::string& kind) {
    json cfg;
    cfg["kind"] = kind;
    if (kind == "mean_consistency") {
        cfg["spec"] = perturbation_json(mean_seed8(), 0.1, 0.05, {1.0, 1.0}, true);
        cfg["ns"] = json::array({10, 50, 250});
        cfg["seeds"] = seed_range(10);
        cfg["heldout_count"] = 50;
        cfg["data_seed_base"] = 5000;
        cfg["heldout_seed_base"] = 9000;
        cfg["sgg_seed_base"] = 6000;
        cfg["solver"] = solver_to_json(SolverConfig{SolverMode::heuristic, 10, 8, 0});
        cfg["schedule"] = {{"eta0", 1.0}, {"tau", 1.0}, {"power", 1.0}};
        cfg["radius"] = 0.0;
        return cfg;
    }
    if (kind == "quantize") {
        json components = json::array();
        const AttributeVector flip{1.0, 1.0};
        for (const AttributedGraph& seed :
             {ring6({3, 0}, {1, 1}), star6({0, 3}, {1, -1}), two_triangles6({3, 3}, {-1, 1})}) {
            json comp;
            comp["weight"] = 1.0 / 3.0;
            json spec = perturbation_json(seed, 0.1, 0.02, flip, true);
            spec.erase("kind");
            comp["spec"] = std::move(spec);
            components.push_back(std::move(comp));
        }
        cfg["mixture"] = {{"kind", "mixture"}, {"components", components}, {"rng_seed", 0}};
        cfg["k"] = 3;
        cfg["distortion"] = "sq";
        cfg["train_count"] = 240;
        cfg["heldout_count"] = 60;
        cfg["seeds"] = seed_range(10);
        cfg["data_seed_base"] = 1000;
        cfg["heldout_seed_base"] = 1500;
        cfg["sgg_seed_base"] = 2000;
        cfg["batch_rounds"] = 5;
        cfg["solver"] = solver_to_json(SolverConfig{});
        SggConfig sgg;
        sgg.schedule = StepSchedule{0.5, 50.0, 1.0};
        sgg.iterations = 480;
        sgg.checkpoint_every = 120;
        cfg["sgg"] = sgg_to_json(sgg);
        return cfg;
    }
    if (kind == "adaline") {
        json pos = perturbation_json(ring6({1.5, 0}, {1, 0.5}), 0.05, 0.02, {1.0, 0.5}, true);
        json neg = perturbation_json(star6({0, 1.5}, {0.5, 1}), 0.05, 0.02, {0.5, 1.0}, true);
        pos.erase("kind");
        neg.erase("kind");
        cfg["task"] = {{"kind", "two_class"}, {"pos", pos}, {"neg", neg}, {"rng_seed", 0}};
        cfg["train_count"] = 200;
        cfg["heldout_count"] = 50;
        cfg["seeds"] = seed_range(10);
        cfg["data_seed_base"] = 3000;
        cfg["heldout_seed_base"] = 3500;
        cfg["sgg_seed_base"] = 4000;
        cfg["solver"] = solver_to_json(SolverConfig{});
        SggConfig sgg;
        sgg.schedule = StepSchedule{0.01, 2000.0, 1.0};
        sgg.iterations = 2000;
        sgg.checkpoint_every = 500;
        cfg["sgg"] = sgg_to_json(sgg);
        return cfg;
    }
    if (kind == "distance_matrix") {
        cfg["data"] = {{"generator", perturbation_json(ring6({3, 0}, {1, 1}), 0.05, 0.0,
                                                       AttributeVector{}, true)},
                       {"count", 8}};
        cfg["solver"] = solver_to_json(SolverConfig{});
        return cfg;
    }
    if (kind == "gradcheck") {
        cfg["losses"] = json::array({"sq_half_dist", "dist", "adaline", "quantize_sq",
                                     "quantize_dist", "mse_map"});
        cfg["samples"] = 30;
        cfg["order"] = 3;
        cfg["attr_dim"] = 2;
        cfg["h"] = 1e-6;
        cfg["tol"] = 1e-5;
        cfg["rng_seed"] = 5;
        cfg["solver"] = solver_to_json(SolverConfig{});
        return cfg;
    }
    throw std::invalid_argument(
        "unknown experiment kind \"" + kind +
        "\" (expected mean_consistency, quantize, adaline, distance_matrix, or gradcheck)");
}

json resolve_experiment_config(const std::string& kind, const json& overrides) {
    json resolved = merge_config(default_experiment_config(kind), overrides);
    resolved["kind"] = kind;
    return resolved;
}

json run_experiment(const json& resolved, const std::filesystem::path& out_dir) {
    const std::string kind = resolved.at("kind").get<std::string>();
    std::filesystem::create_directories(out_dir);
    OutputCollector out{out_dir};

    if (kind == "mean_consistency")
        run_mean_consistency(resolved, out);
    else if (kind == "quantize")
        run_quantize_experiment(resolved, out);
    else if (kind == "adaline")
        run_adaline_experiment(resolved, out);
    else if (kind == "distance_matrix")
        run_distance_matrix(resolved, out);
    else if (kind == "gradcheck")
        run_gradcheck_experiment(resolved, out);
    else
        throw std::invalid_argument("unknown experiment kind \"" + kind + "\"");

    json manifest;
    manifest["kind"] = kind;
    manifest["config"] = resolved;
    manifest["outputs"] = std::move(out.outputs);
    write_file(out_dir / "manifest.json", manifest.dump(2) + "\n");
    return manifest;
}

json rerun_from_manifest(const json& manifest, const std::filesystem::path& out_dir) {
    if (!manifest.contains("config") || !manifest.contains("kind"))
        throw std::invalid_argument("manifest must contain \"kind\" and \"config\"");
    return run_experiment(manifest.at("config"), out_dir);
}

}  // namespace orbitool
