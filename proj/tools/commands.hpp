#pragma once

#include <cstdint>
#include <string>

#include "experiments.hpp"

namespace orbitool {

// Raw flag values; converted to core configs after parsing.
struct SolverFlags {
    std::string mode = "exact";
    std::size_t exact_max_order = 10;
    int restarts = 8;
    std::uint64_t rng_seed = 0;

    orbilearn::SolverConfig to_config() const;
};

struct SggFlags {
    double eta0 = 0.5;
    double tau = 50.0;
    double power = 1.0;
    double radius = 0.0;  // 0 = automatic (10 × longest sample)
    long iterations = 1000;
    long checkpoint_every = 50;
    std::uint64_t rng_seed = 0;

    orbilearn::SggConfig to_config(const orbilearn::SolverConfig& solver) const;
};

void cmd_align(const std::string& a, const std::string& b, const SolverFlags& solver);
void cmd_dist(const std::string& a, const std::string& b, const SolverFlags& solver);
void cmd_ged(const std::string& a, const std::string& b, const SolverFlags& solver);

void cmd_gen(const std::string& spec_path, std::size_t count, const std::string& out_path);

void cmd_mean(const std::string& data_path, const std::string& eval_path,
              const std::string& out_path, const std::string& trace_path,
              const SolverFlags& solver, const SggFlags& sgg);

void cmd_quantize(const std::string& data_path, const std::string& eval_path, std::size_t k,
                  const std::string& distortion, const std::string& out_path,
                  const std::string& trace_path, const SolverFlags& solver, const SggFlags& sgg);

void cmd_adaline_train(const std::string& data_path, const std::string& eval_path,
                       const std::string& out_path, const std::string& trace_path,
                       const SolverFlags& solver, const SggFlags& sgg);

void cmd_adaline_predict(const std::string& model_path, const std::string& input_path,
                         const SolverFlags& solver);

void cmd_gradcheck(const std::string& losses_csv, int samples, std::size_t order,
                   std::size_t attr_dim, double h, double tol, std::uint64_t rng_seed,
                   const std::string& out_path, const SolverFlags& solver);

void cmd_experiment(const std::string& kind, const std::string& config_path,
                    const std::string& from_manifest, const std::string& out_dir);

}  // namespace orbitool
