#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "orbilearn/json_io.hpp"
#include "test_support.hpp"

using namespace orbilearn;
using testsupport::random_graph;

TEST_CASE("graph JSON round-trips bit-exactly") {
    RandomEngine rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        const AttributedGraph g = random_graph(2 + trial % 5, 1 + trial % 3, rng, trial % 2 == 0);
        const AttributedGraph back = graph_from_json(graph_to_json(g));
        CHECK(back == g);  // includes every cell bit
        // serialization itself is stable
        CHECK(graph_to_json(back) == graph_to_json(g));
    }
}

TEST_CASE("graph JSON matches the documented schema") {
    const AttributedGraph g =
        from_edge_list({{1.5}, {0.0}}, {{0, 1, {-0.25}}}, true);
    const std::string text = graph_to_json(g);
    CHECK(text.find("\"attr_dim\":1") != std::string::npos);
    CHECK(text.find("\"undirected\":true") != std::string::npos);
    CHECK(text.find("\"vertices\":[[1.5],[0.0]]") != std::string::npos);
    // undirected edges stored once, i < j
    CHECK(text.find("\"edges\":[{\"attr\":[-0.25],\"i\":0,\"j\":1}]") != std::string::npos);
}

TEST_CASE("graph JSON parse errors name the offending field") {
    CHECK_THROWS_AS(graph_from_json("{\"undirected\":false}"), std::invalid_argument);
    CHECK_THROWS_AS(graph_from_json("[1,2,3]"), std::invalid_argument);
    CHECK_THROWS(graph_from_json("not json at all"));
    // duplicate edge in file
    const std::string dup =
        R"({"attr_dim":1,"undirected":false,"vertices":[[0.0],[0.0]],)"
        R"("edges":[{"i":0,"j":1,"attr":[1.0]},{"i":0,"j":1,"attr":[2.0]}]})";
    CHECK_THROWS_AS(graph_from_json(dup), std::invalid_argument);
}

TEST_CASE("dataset JSON: array form without labels, object form with labels") {
    RandomEngine rng(5);
    std::vector<AttributedGraph> graphs;
    for (int i = 0; i < 4; ++i) graphs.push_back(random_graph(3, 2, rng));

    const GraphDataset plain = GraphDataset::ingest(graphs);
    const std::string plain_text = dataset_to_json(plain);
    CHECK(plain_text.front() == '[');
    const GraphDataset plain_back = dataset_from_json(plain_text);
    CHECK(plain_back.graphs.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) CHECK(plain_back.graphs[i] == plain.graphs[i]);

    const GraphDataset labeled = GraphDataset::ingest(graphs, {1.0, -1.0, 1.0, -1.0});
    const std::string labeled_text = dataset_to_json(labeled);
    CHECK(labeled_text.front() == '{');
    const GraphDataset labeled_back = dataset_from_json(labeled_text);
    CHECK(labeled_back.labels == labeled.labels);

    // mixed orders in a file are padded on ingestion
    const std::string mixed = "[" + graph_to_json(from_edge_list({{1.0}}, {}, false)) + "," +
                              graph_to_json(from_edge_list({{1.0}, {2.0}}, {}, false)) + "]";
    CHECK(dataset_from_json(mixed).common_order == 2);
}

TEST_CASE("codebook and adaline model files") {
    RandomEngine rng(7);
    Codebook cb;
    for (int i = 0; i < 3; ++i) cb.centroids.push_back(random_graph(4, 2, rng));
    const Codebook cb_back = codebook_from_json(codebook_to_json(cb));
    REQUIRE(cb_back.k() == 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(cb_back.centroids[i] == cb.centroids[i]);

    const AdalineModel model{random_graph(3, 2, rng), -0.375};
    const AdalineModel back = adaline_from_json(adaline_to_json(model));
    CHECK(back.weight == model.weight);
    CHECK(back.bias == model.bias);
    CHECK_THROWS_AS(adaline_from_json(graph_to_json(model.weight)), std::invalid_argument);
}

TEST_CASE("generator spec files round-trip") {
    RandomEngine rng(9);
    datagen::PerturbationSpec p;
    p.seed_graph = random_graph(4, 2, rng);
    p.attr_noise_sigma = 0.1;
    p.edge_flip_prob = 0.05;
    p.flip_attr = {1.0, 1.0};
    p.permute = true;
    p.rng_seed = 42;

    const GeneratorSpec spec = p;
    const GeneratorSpec back = generator_spec_from_json(generator_spec_to_json(spec));
    const auto* pb = std::get_if<datagen::PerturbationSpec>(&back);
    REQUIRE(pb != nullptr);
    CHECK(pb->seed_graph == p.seed_graph);
    CHECK(pb->attr_noise_sigma == p.attr_noise_sigma);
    CHECK(pb->rng_seed == p.rng_seed);

    datagen::MixtureSpec mix;
    mix.components = {{p, 0.25}, {p, 0.75}};
    mix.rng_seed = 7;
    const GeneratorSpec mix_back = generator_spec_from_json(generator_spec_to_json(mix));
    const auto* mb = std::get_if<datagen::MixtureSpec>(&mix_back);
    REQUIRE(mb != nullptr);
    CHECK(mb->components.size() == 2);
    CHECK(mb->components[1].weight == 0.75);

    TwoClassSpec tc{p, p, 11};
    const GeneratorSpec tc_back = generator_spec_from_json(generator_spec_to_json(tc));
    CHECK(std::get_if<TwoClassSpec>(&tc_back) != nullptr);

    CHECK_THROWS_AS(generator_spec_from_json("{\"kind\":\"nope\"}"), std::invalid_argument);
    CHECK_THROWS_AS(generator_spec_from_json("{}"), std::invalid_argument);
}

TEST_CASE("file helpers") {
    const auto dir = std::filesystem::temp_directory_path() / "orbilearn_json_io_test";
    const auto file = dir / "sub" / "x.json";
    write_file(file, "{\"a\":1}");
    CHECK(read_file(file) == "{\"a\":1}");
    CHECK_THROWS(read_file(dir / "missing.json"));
    std::filesystem::remove_all(dir);
}
