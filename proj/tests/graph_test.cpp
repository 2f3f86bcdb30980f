#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "dsem/graph.hpp"
#include "support/test_util.hpp"

using dsem::WeightedGraph;

TEST_SUITE("graph") {

TEST_CASE("construction rejects a negative vertex count") {
    CHECK_THROWS_AS(WeightedGraph(-1), std::invalid_argument);
    CHECK(WeightedGraph(0).num_vertices() == 0);
    CHECK(WeightedGraph(0).total_volume() == 0.0);
}

TEST_CASE("add_edge validates endpoints and weights") {
    WeightedGraph g(3);
    CHECK_THROWS_AS(g.add_edge(-1, 0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(g.add_edge(0, 3, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(g.add_edge(0, 1, -0.5), std::invalid_argument);
    CHECK_THROWS_AS(g.add_edge(0, 1, std::nan("")), std::invalid_argument);
    g.add_edge(0, 1, 0.5);
    CHECK_THROWS_AS(g.add_edge(1, 0, 0.2), std::invalid_argument);
}

TEST_CASE("zero-weight edges are dropped") {
    WeightedGraph g(2);
    g.add_edge(0, 1, 0.0);
    CHECK(g.edges().empty());
    CHECK(g.edge_weight(0, 1) == 0.0);
    CHECK(g.total_volume() == 0.0);
    g.add_edge(0, 1, 1.0);
    CHECK(g.edge_weight(0, 1) == 1.0);
    CHECK(g.edge_weight(1, 0) == 1.0);
}

TEST_CASE("degrees count self-loops once") {
    WeightedGraph g(3);
    g.add_edge(0, 1, 2.0);
    g.add_edge(0, 0, 0.5);
    CHECK(g.degree(0) == 2.5);
    CHECK(g.degree(1) == 2.0);
    CHECK(g.degree(2) == 0.0);
    CHECK(g.self_loop(0) == 0.5);
    CHECK(g.self_loop(1) == 0.0);
    CHECK(g.total_volume() == 4.5);
}

TEST_CASE("cut excludes self-loops and matches degree identity") {
    WeightedGraph g(4);
    g.add_edge(0, 1, 1.0);
    g.add_edge(1, 2, 0.4);
    g.add_edge(2, 3, 0.25);
    g.add_edge(1, 1, 0.7);
    const std::vector<int> left{0, 1};
    CHECK(g.cut(left) == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(g.volume(left) == doctest::Approx(3.1).epsilon(1e-15));
    for (int v = 0; v < 4; ++v) {
        const std::vector<int> solo{v};
        CHECK(g.degree(v) == doctest::Approx(g.cut(solo) + g.self_loop(v)).epsilon(1e-15));
    }
}

TEST_CASE("cut and volume reject bad vertex sets") {
    WeightedGraph g(3);
    g.add_edge(0, 1, 1.0);
    const std::vector<int> dup{0, 0};
    const std::vector<int> oob{0, 5};
    CHECK_THROWS_AS(g.cut(dup), std::invalid_argument);
    CHECK_THROWS_AS(g.volume(oob), std::invalid_argument);
}

TEST_CASE("edges are stored keyed by the smaller endpoint first") {
    WeightedGraph g(3);
    g.add_edge(2, 0, 0.3);
    g.add_edge(1, 2, 0.6);
    std::vector<std::pair<int, int>> keys;
    for (const auto& [key, w] : g.edges()) {
        (void)w;
        keys.push_back(key);
    }
    CHECK(keys == std::vector<std::pair<int, int>>{{0, 2}, {1, 2}});
}

TEST_CASE("random graphs satisfy the volume identity") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const WeightedGraph g = dsem::testing::random_graph(8, seed);
        double degree_sum = 0.0;
        std::vector<int> all;
        for (int v = 0; v < g.num_vertices(); ++v) {
            degree_sum += g.degree(v);
            all.push_back(v);
        }
        CHECK(g.total_volume() == doctest::Approx(degree_sum).epsilon(1e-12));
        CHECK(g.volume(all) == doctest::Approx(degree_sum).epsilon(1e-12));
        CHECK(g.cut(all) == 0.0);
    }
}

}  // TEST_SUITE
