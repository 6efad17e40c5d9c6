#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "orbilearn/alignment.hpp"
#include "orbilearn/sgg.hpp"

namespace orbitool {

/// Built-in, fully explicit config for one experiment kind; every seed and
/// threshold is a constant, and bundled seed graphs are embedded as JSON so a
/// manifest is self-contained.
nlohmann::json default_experiment_config(const std::string& kind);

/// Defaults merged (recursively) with the user's overrides.
nlohmann::json resolve_experiment_config(const std::string& kind, const nlohmann::json& overrides);

/// Runs the resolved config, writes every output plus manifest.json under
/// out_dir, and returns the manifest.
nlohmann::json run_experiment(const nlohmann::json& resolved,
                              const std::filesystem::path& out_dir);

/// Replays the resolved config embedded in a manifest.
nlohmann::json rerun_from_manifest(const nlohmann::json& manifest,
                                   const std::filesystem::path& out_dir);

/// The gradcheck point loop, shared by the subcommand and the experiment:
/// returns a JSON array of {loss, deviation, verdict}.
nlohmann::json run_gradcheck_points(const nlohmann::json& cfg);

// config blocks shared with the plain subcommands
orbilearn::SolverConfig solver_from_json(const nlohmann::json& j);
nlohmann::json solver_to_json(const orbilearn::SolverConfig& cfg);
orbilearn::SggConfig sgg_from_json(const nlohmann::json& j);
nlohmann::json sgg_to_json(const orbilearn::SggConfig& cfg);

/// Full-precision float formatting used for every CSV cell.
std::string csv_num(double v);

}  // namespace orbitool
