#include "orbilearn/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace orbilearn {

using nlohmann::json;

namespace {

json attr_to_json(std::span<const double> attr) {
    json arr = json::array();
    for (double v : attr) {
        if (!std::isfinite(v))
            throw std::invalid_argument("graph_to_json: non-finite attribute value");
        arr.push_back(v);
    }
    return arr;
}

AttributeVector attr_from_json(const json& arr, const char* field) {
    if (!arr.is_array())
        throw std::invalid_argument(std::string("graph_from_json: ") + field +
                                    " must be an array of numbers");
    AttributeVector out;
    out.reserve(arr.size());
    for (const json& v : arr) {
        if (!v.is_number())
            throw std::invalid_argument(std::string("graph_from_json: ") + field +
                                        " must contain only numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

json graph_to_json_obj(const AttributedGraph& g) {
    json j;
    j["attr_dim"] = g.attr_dim();
    j["undirected"] = g.undirected();
    json vertices = json::array();
    for (std::size_t i = 0; i < g.order(); ++i) vertices.push_back(attr_to_json(g.cell(i, i)));
    j["vertices"] = std::move(vertices);
    json edges = json::array();
    for (std::size_t i = 0; i < g.order(); ++i)
        for (std::size_t jj = 0; jj < g.order(); ++jj) {
            if (i == jj || !g.cell_nonzero(i, jj)) continue;
            if (g.undirected() && jj < i) continue;  // store each undirected edge once
            json e;
            e["i"] = i;
            e["j"] = jj;
            e["attr"] = attr_to_json(g.cell(i, jj));
            edges.push_back(std::move(e));
        }
    j["edges"] = std::move(edges);
    return j;
}

AttributedGraph graph_from_json_obj(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("graph_from_json: expected a JSON object");
    for (const char* field : {"attr_dim", "undirected", "vertices", "edges"})
        if (!j.contains(field))
            throw std::invalid_argument(std::string("graph_from_json: missing field \"") + field +
                                        "\"");
    const std::size_t d = j.at("attr_dim").get<std::size_t>();
    const bool undirected = j.at("undirected").get<bool>();
    std::vector<AttributeVector> vertices;
    for (const json& v : j.at("vertices")) {
        vertices.push_back(attr_from_json(v, "vertices"));
        if (vertices.back().size() != d)
            throw std::invalid_argument("graph_from_json: vertices entries must have attr_dim " +
                                        std::to_string(d) + " values");
    }
    std::vector<EdgeEntry> edges;
    for (const json& e : j.at("edges")) {
        EdgeEntry entry;
        entry.i = e.at("i").get<std::size_t>();
        entry.j = e.at("j").get<std::size_t>();
        entry.attr = attr_from_json(e.at("attr"), "edges.attr");
        edges.push_back(std::move(entry));
    }
    return from_edge_list(vertices, edges, undirected);
}

}  // namespace

std::string graph_to_json(const AttributedGraph& g) { return graph_to_json_obj(g).dump(); }

AttributedGraph graph_from_json(const std::string& text) {
    return graph_from_json_obj(json::parse(text));
}

std::string dataset_to_json(const GraphDataset& ds) {
    if (!ds.has_labels()) {
        json arr = json::array();
        for (const AttributedGraph& g : ds.graphs) arr.push_back(graph_to_json_obj(g));
        return arr.dump();
    }
    json j;
    json arr = json::array();
    for (const AttributedGraph& g : ds.graphs) arr.push_back(graph_to_json_obj(g));
    j["graphs"] = std::move(arr);
    j["labels"] = ds.labels;
    return j.dump();
}

GraphDataset dataset_from_json(const std::string& text) {
    const json j = json::parse(text);
    std::vector<AttributedGraph> graphs;
    std::vector<double> labels;
    if (j.is_array()) {
        for (const json& g : j) graphs.push_back(graph_from_json_obj(g));
    } else if (j.is_object() && j.contains("graphs")) {
        for (const json& g : j.at("graphs")) graphs.push_back(graph_from_json_obj(g));
        if (j.contains("labels")) labels = j.at("labels").get<std::vector<double>>();
    } else {
        throw std::invalid_argument(
            "dataset_from_json: expected an array of graphs or an object with \"graphs\"");
    }
    return GraphDataset::ingest(std::move(graphs), std::move(labels));
}

std::string codebook_to_json(const Codebook& cb) {
    json arr = json::array();
    for (const AttributedGraph& c : cb.centroids) arr.push_back(graph_to_json_obj(c));
    return arr.dump();
}

Codebook codebook_from_json(const std::string& text) {
    const json j = json::parse(text);
    if (!j.is_array())
        throw std::invalid_argument("codebook_from_json: expected a JSON array of graphs");
    Codebook cb;
    for (const json& g : j) cb.centroids.push_back(graph_from_json_obj(g));
    return cb;
}

std::string adaline_to_json(const AdalineModel& model) {
    json j = graph_to_json_obj(model.weight);
    j["bias"] = model.bias;
    return j.dump();
}

AdalineModel adaline_from_json(const std::string& text) {
    const json j = json::parse(text);
    if (!j.contains("bias"))
        throw std::invalid_argument("adaline_from_json: missing field \"bias\"");
    return AdalineModel{graph_from_json_obj(j), j.at("bias").get<double>()};
}

namespace {

json perturbation_to_json_obj(const datagen::PerturbationSpec& spec) {
    json j;
    j["seed_graph"] = graph_to_json_obj(spec.seed_graph);
    j["attr_noise_sigma"] = spec.attr_noise_sigma;
    j["edge_flip_prob"] = spec.edge_flip_prob;
    j["flip_attr"] = spec.flip_attr;
    j["permute"] = spec.permute;
    j["rng_seed"] = spec.rng_seed;
    return j;
}

datagen::PerturbationSpec perturbation_from_json_obj(const json& j) {
    if (!j.is_object() || !j.contains("seed_graph"))
        throw std::invalid_argument("generator spec: perturbation needs a \"seed_graph\" field");
    datagen::PerturbationSpec spec;
    spec.seed_graph = graph_from_json_obj(j.at("seed_graph"));
    if (j.contains("attr_noise_sigma")) spec.attr_noise_sigma = j.at("attr_noise_sigma").get<double>();
    if (j.contains("edge_flip_prob")) spec.edge_flip_prob = j.at("edge_flip_prob").get<double>();
    if (j.contains("flip_attr")) spec.flip_attr = j.at("flip_attr").get<AttributeVector>();
    if (j.contains("permute")) spec.permute = j.at("permute").get<bool>();
    if (j.contains("rng_seed")) spec.rng_seed = j.at("rng_seed").get<std::uint64_t>();
    return spec;
}

}  // namespace

GeneratorSpec generator_spec_from_json(const std::string& text) {
    const json j = json::parse(text);
    if (!j.is_object() || !j.contains("kind"))
        throw std::invalid_argument("generator spec: missing field \"kind\"");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "perturbation") return perturbation_from_json_obj(j);
    if (kind == "mixture") {
        datagen::MixtureSpec spec;
        if (!j.contains("components"))
            throw std::invalid_argument("generator spec: mixture needs \"components\"");
        for (const json& c : j.at("components")) {
            datagen::MixtureComponent comp;
            comp.weight = c.at("weight").get<double>();
            comp.spec = perturbation_from_json_obj(c.at("spec"));
            spec.components.push_back(std::move(comp));
        }
        if (j.contains("rng_seed")) spec.rng_seed = j.at("rng_seed").get<std::uint64_t>();
        return spec;
    }
    if (kind == "two_class") {
        TwoClassSpec spec;
        if (!j.contains("pos") || !j.contains("neg"))
            throw std::invalid_argument("generator spec: two_class needs \"pos\" and \"neg\"");
        spec.pos = perturbation_from_json_obj(j.at("pos"));
        spec.neg = perturbation_from_json_obj(j.at("neg"));
        if (j.contains("rng_seed")) spec.rng_seed = j.at("rng_seed").get<std::uint64_t>();
        return spec;
    }
    throw std::invalid_argument("generator spec: unknown kind \"" + kind + "\"");
}

std::string generator_spec_to_json(const GeneratorSpec& spec) {
    json j;
    if (const auto* p = std::get_if<datagen::PerturbationSpec>(&spec)) {
        j = perturbation_to_json_obj(*p);
        j["kind"] = "perturbation";
    } else if (const auto* m = std::get_if<datagen::MixtureSpec>(&spec)) {
        j["kind"] = "mixture";
        json comps = json::array();
        for (const datagen::MixtureComponent& c : m->components) {
            json cj;
            cj["weight"] = c.weight;
            cj["spec"] = perturbation_to_json_obj(c.spec);
            comps.push_back(std::move(cj));
        }
        j["components"] = std::move(comps);
        j["rng_seed"] = m->rng_seed;
    } else if (const auto* t = std::get_if<TwoClassSpec>(&spec)) {
        j["kind"] = "two_class";
        j["pos"] = perturbation_to_json_obj(t->pos);
        j["neg"] = perturbation_to_json_obj(t->neg);
        j["rng_seed"] = t->rng_seed;
    }
    return j.dump();
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file for reading: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open file for writing: " + path.string());
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace orbilearn
