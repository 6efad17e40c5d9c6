// orbilearn command line: alignment kernels and metrics on attributed
// graphs, stochastic generalized gradient learners, synthetic data
// generation, and reproducible experiments.

#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

void add_solver_flags(CLI::App* sub, orbitool::SolverFlags& flags) {
    sub->add_option("--mode", flags.mode, "Alignment solver: exact or heuristic")
        ->check(CLI::IsMember({"exact", "heuristic"}))
        ->capture_default_str();
    sub->add_option("--exact-max-order", flags.exact_max_order,
                    "Largest order the exact solver will enumerate")
        ->capture_default_str();
    sub->add_option("--restarts", flags.restarts, "Heuristic restarts (greedy seed + random)")
        ->capture_default_str();
    sub->add_option("--seed", flags.rng_seed, "Heuristic restart seed")->capture_default_str();
}

void add_sgg_flags(CLI::App* sub, orbitool::SggFlags& flags) {
    sub->add_option("--eta0", flags.eta0, "Step size at t = 0")->capture_default_str();
    sub->add_option("--tau", flags.tau, "Step decay delay")->capture_default_str();
    sub->add_option("--power", flags.power, "Step decay exponent, in (0.5, 1]")
        ->capture_default_str();
    sub->add_option("--radius", flags.radius,
                    "Projection ball radius; 0 picks 10x the longest sample")
        ->capture_default_str();
    sub->add_option("--iterations", flags.iterations, "Number of SGG steps")
        ->capture_default_str();
    sub->add_option("--checkpoint-every", flags.checkpoint_every, "Trace checkpoint period")
        ->capture_default_str();
    sub->add_option("--sgg-seed", flags.rng_seed, "SGG stream seed")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"statistical learning on attributed graphs via optimal alignment"};
    app.require_subcommand(1);

    // align / dist / ged
    struct PairOpts {
        std::string a, b;
        orbitool::SolverFlags solver;
    };
    PairOpts align_opts, dist_opts, ged_opts;
    const auto add_pair = [&](const char* name, const char* help, PairOpts& opts) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--a", opts.a, "First graph JSON file")->required();
        sub->add_option("--b", opts.b, "Second graph JSON file")->required();
        add_solver_flags(sub, opts.solver);
        return sub;
    };
    add_pair("align", "Optimal alignment kernel value and witness", align_opts)
        ->callback([&] { orbitool::cmd_align(align_opts.a, align_opts.b, align_opts.solver); });
    add_pair("dist", "Intrinsic metric between two graphs", dist_opts)
        ->callback([&] { orbitool::cmd_dist(dist_opts.a, dist_opts.b, dist_opts.solver); });
    add_pair("ged", "Graph edit distance (sum of cell costs)", ged_opts)
        ->callback([&] { orbitool::cmd_ged(ged_opts.a, ged_opts.b, ged_opts.solver); });

    // gen
    std::string gen_spec, gen_out;
    std::size_t gen_count = 100;
    CLI::App* gen = app.add_subcommand("gen", "Sample a synthetic dataset from a generator spec");
    gen->add_option("--spec", gen_spec, "Generator spec JSON file")->required();
    gen->add_option("--count", gen_count, "Number of samples")->capture_default_str();
    gen->add_option("--out", gen_out, "Output dataset JSON file")->required();
    gen->callback([&] { orbitool::cmd_gen(gen_spec, gen_count, gen_out); });

    // mean / quantize / adaline-train
    struct TrainOpts {
        std::string data, eval, out, trace;
        orbitool::SolverFlags solver;
        orbitool::SggFlags sgg;
    };
    const auto add_train = [&](const char* name, const char* help, TrainOpts& opts) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--data", opts.data, "Training dataset JSON file")->required();
        sub->add_option("--eval", opts.eval, "Held-out dataset for trace risk columns");
        sub->add_option("--out", opts.out, "Output model JSON file")->required();
        sub->add_option("--trace", opts.trace, "Optional trace CSV path");
        add_solver_flags(sub, opts.solver);
        add_sgg_flags(sub, opts.sgg);
        return sub;
    };

    TrainOpts mean_opts;
    add_train("mean", "Estimate the mean graph by SGG on the half-squared metric", mean_opts)
        ->callback([&] {
            orbitool::cmd_mean(mean_opts.data, mean_opts.eval, mean_opts.out, mean_opts.trace,
                               mean_opts.solver, mean_opts.sgg);
        });

    TrainOpts quant_opts;
    std::size_t quant_k = 3;
    std::string quant_distortion = "sq";
    CLI::App* quant =
        add_train("quantize", "Online competitive learning of a k-centroid codebook", quant_opts);
    quant->add_option("--k", quant_k, "Number of centroids")->capture_default_str();
    quant->add_option("--distortion", quant_distortion, "Distortion: sq or dist")
        ->check(CLI::IsMember({"sq", "dist"}))
        ->capture_default_str();
    quant->callback([&] {
        orbitool::cmd_quantize(quant_opts.data, quant_opts.eval, quant_k, quant_distortion,
                               quant_opts.out, quant_opts.trace, quant_opts.solver,
                               quant_opts.sgg);
    });

    TrainOpts ada_opts;
    add_train("adaline-train", "Train the graph adaline on a ±1-labeled dataset", ada_opts)
        ->callback([&] {
            orbitool::cmd_adaline_train(ada_opts.data, ada_opts.eval, ada_opts.out,
                                        ada_opts.trace, ada_opts.solver, ada_opts.sgg);
        });

    // adaline-predict
    std::string pred_model, pred_input;
    orbitool::SolverFlags pred_solver;
    CLI::App* pred = app.add_subcommand("adaline-predict", "Score graphs with a trained adaline");
    pred->add_option("--model", pred_model, "Adaline model JSON file")->required();
    pred->add_option("--input", pred_input, "Graph or dataset JSON file")->required();
    add_solver_flags(pred, pred_solver);
    pred->callback([&] { orbitool::cmd_adaline_predict(pred_model, pred_input, pred_solver); });

    // gradcheck
    std::string gc_losses = "sq_half_dist,dist,adaline,quantize_sq,quantize_dist,mse_map";
    int gc_samples = 30;
    std::size_t gc_order = 3, gc_dim = 2;
    double gc_h = 1e-6, gc_tol = 1e-5;
    std::uint64_t gc_seed = 5;
    std::string gc_out;
    orbitool::SolverFlags gc_solver;
    CLI::App* gc = app.add_subcommand(
        "gradcheck", "Finite-difference checks of the subgradient selections");
    gc->add_option("--losses", gc_losses, "Comma-separated loss kinds")->capture_default_str();
    gc->add_option("--samples", gc_samples, "Points per loss")->capture_default_str();
    gc->add_option("--order", gc_order, "Random graph order")->capture_default_str();
    gc->add_option("--attr-dim", gc_dim, "Attribute dimension")->capture_default_str();
    gc->add_option("--fd-h", gc_h, "Central difference step")->capture_default_str();
    gc->add_option("--tol", gc_tol, "Pass tolerance")->capture_default_str();
    gc->add_option("--gc-seed", gc_seed, "Sampling seed")->capture_default_str();
    gc->add_option("--out", gc_out, "Optional JSON report path");
    add_solver_flags(gc, gc_solver);
    gc->callback([&] {
        orbitool::cmd_gradcheck(gc_losses, gc_samples, gc_order, gc_dim, gc_h, gc_tol, gc_seed,
                                gc_out, gc_solver);
    });

    // experiment
    std::string exp_kind, exp_config, exp_manifest, exp_out;
    CLI::App* exp = app.add_subcommand(
        "experiment", "Run a bundled experiment and write CSV outputs plus a manifest");
    exp->add_option("kind", exp_kind,
                    "mean_consistency | quantize | adaline | distance_matrix | gradcheck");
    exp->add_option("--config", exp_config, "JSON overrides merged onto the built-in defaults");
    exp->add_option("--from-manifest", exp_manifest,
                    "Re-run the resolved config stored in an existing manifest")
        ->excludes("--config");
    exp->add_option("--out", exp_out, "Output directory")->required();
    exp->callback([&] {
        if (exp_manifest.empty() && exp_kind.empty())
            throw CLI::ValidationError("experiment",
                                       "either a kind or --from-manifest is required");
        orbitool::cmd_experiment(exp_kind, exp_config, exp_manifest, exp_out);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // help exits 0, usage errors 2
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
