#pragma once

#include <filesystem>
#include <string>
#include <variant>

#include "orbilearn/attributed_graph.hpp"
#include "orbilearn/datagen.hpp"
#include "orbilearn/learners.hpp"

namespace orbilearn {

// Graph files:
//   {"attr_dim": d, "undirected": b, "vertices": [[d floats]...],
//    "edges": [{"i":..,"j":..,"attr":[d floats]}, ...]}
// Dataset files: a plain JSON array of graph objects, or
//   {"graphs": [...], "labels": [...]} when labels are present.
// Floats round-trip bit-exactly (shortest-representation serialization).

std::string graph_to_json(const AttributedGraph& g);
AttributedGraph graph_from_json(const std::string& text);

std::string dataset_to_json(const GraphDataset& ds);
GraphDataset dataset_from_json(const std::string& text);

/// Codebook file: JSON array of graph objects.
std::string codebook_to_json(const Codebook& cb);
Codebook codebook_from_json(const std::string& text);

/// Adaline model file: a graph object with an extra "bias" field.
std::string adaline_to_json(const AdalineModel& model);
AdalineModel adaline_from_json(const std::string& text);

struct TwoClassSpec {
    datagen::PerturbationSpec pos;
    datagen::PerturbationSpec neg;
    std::uint64_t rng_seed = 0;
};

using GeneratorSpec =
    std::variant<datagen::PerturbationSpec, datagen::MixtureSpec, TwoClassSpec>;

/// Generator spec files carry "kind": "perturbation" | "mixture" | "two_class"
/// next to the fields of the corresponding struct.
GeneratorSpec generator_spec_from_json(const std::string& text);
std::string generator_spec_to_json(const GeneratorSpec& spec);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace orbilearn
