#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "core/error.hpp"
#include "core/graph.hpp"
#include "core/metrics.hpp"
#include "core/rng.hpp"
#include "core/synth.hpp"
#include "support/oracles.hpp"

using namespace dualweb;

namespace {

WeightedGraph from_edges(std::size_t n, std::initializer_list<std::pair<int, int>> edges) {
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < n; ++i) ids.push_back("n" + std::to_string(i));
    std::vector<double> w(n * n, 0.0);
    for (const auto& [i, j] : edges) w[i * n + j] = w[j * n + i] = 1.0;
    return WeightedGraph(std::move(ids), std::move(w));
}

WeightedGraph complete_graph(std::size_t n) {
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < n; ++i) ids.push_back("n" + std::to_string(i));
    std::vector<double> w(n * n, 1.0);
    for (std::size_t i = 0; i < n; ++i) w[i * n + i] = 0.0;
    return WeightedGraph(std::move(ids), std::move(w));
}

WeightedGraph star_graph(std::size_t n) {
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < n; ++i) ids.push_back("n" + std::to_string(i));
    std::vector<double> w(n * n, 0.0);
    for (std::size_t i = 1; i < n; ++i) w[i] = w[i * n] = 1.0;
    return WeightedGraph(std::move(ids), std::move(w));
}

WeightedGraph cycle_graph(std::size_t n) {
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < n; ++i) ids.push_back("n" + std::to_string(i));
    std::vector<double> w(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = (i + 1) % n;
        w[i * n + j] = w[j * n + i] = 1.0;
    }
    return WeightedGraph(std::move(ids), std::move(w));
}

WeightedGraph relabeled(const WeightedGraph& g, const std::vector<std::size_t>& perm) {
    const std::size_t n = g.size();
    std::vector<std::string> ids(n);
    std::vector<double> w(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        ids[perm[i]] = g.node_id(i);
        for (std::size_t j = 0; j < n; ++j) w[perm[i] * n + perm[j]] = g.weight(i, j);
    }
    return WeightedGraph(std::move(ids), std::move(w));
}

} // namespace

TEST_CASE("density: 30 of 45 possible ties") {
    Rng rng(3);
    // place exactly 30 ties among 10 nodes
    std::vector<std::pair<int, int>> all_pairs;
    for (int i = 0; i < 10; ++i)
        for (int j = i + 1; j < 10; ++j) all_pairs.emplace_back(i, j);
    std::vector<double> w(100, 0.0);
    for (std::size_t k = 0; k < 30; ++k) {
        const auto [i, j] = all_pairs[k];
        w[i * 10 + j] = w[j * 10 + i] = 1.0;
    }
    std::vector<std::string> ids;
    for (int i = 0; i < 10; ++i) ids.push_back("n" + std::to_string(i));
    const WeightedGraph g(std::move(ids), std::move(w));
    CHECK(density(g) == doctest::Approx(30.0 / 45.0)); // 0.667
}

TEST_CASE("density extremes and errors") {
    CHECK(density(complete_graph(7)) == 1.0);
    CHECK(density(from_edges(6, {})) == 0.0);
    CHECK_THROWS_AS(density(WeightedGraph({"A"}, {0})), Error);
}

TEST_CASE("degree basics") {
    const WeightedGraph star = star_graph(5);
    CHECK(degree(star, "n0") == 4);
    CHECK(degree(star, "n3") == 1);
    const WeightedGraph lonely = from_edges(3, {{0, 1}});
    CHECK(degree(lonely, "n2") == 0);
    CHECK_THROWS_AS(degree(star, "nope"), Error);

    const auto hist = degree_distribution(star);
    CHECK(hist.at(4) == 1);
    CHECK(hist.at(1) == 4);
    std::size_t total = 0;
    for (const auto& [d, c] : hist) total += c;
    CHECK(total == star.size());
}

TEST_CASE("degree hubs emerge under preferential attachment") {
    SynthConfig cfg;
    cfg.n_sites = 500;
    cfg.n_global_sites = 0;
    cfg.seed = 9;
    const WeightedGraph g = dichotomize(symmetrize(generate_hyperlink_graph(cfg)));
    auto deg = degrees(g);
    std::sort(deg.begin(), deg.end());
    const std::size_t max_degree = deg.back();
    const std::size_t median = deg[deg.size() / 2];
    CHECK(max_degree >= 10 * median);
}

TEST_CASE("ccdf starts at 1 and decreases") {
    const auto rows = degree_ccdf(star_graph(6));
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].degree == 1);
    CHECK(rows[0].ccdf == 1.0);
    CHECK(rows[1].degree == 5);
    CHECK(rows[1].ccdf == doctest::Approx(1.0 / 6.0));
}

TEST_CASE("clustering: triangle, path, and the brute-force oracle") {
    CHECK(clustering_coefficient(from_edges(3, {{0, 1}, {1, 2}, {0, 2}})) == 1.0);
    CHECK(clustering_coefficient(from_edges(3, {{0, 1}, {1, 2}})) == 0.0);
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const WeightedGraph g = oracle::random_binary_graph(30, 0.3, seed);
        CHECK(clustering_coefficient(g) ==
              doctest::Approx(oracle::avg_local_clustering(g)).epsilon(1e-12));
        CHECK(clustering_coefficient(g, ClusteringVariant::Transitivity) ==
              doctest::Approx(oracle::transitivity(g)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(clustering_coefficient(from_edges(2, {{0, 1}})), Error);
}

TEST_CASE("centralization: star is 1, cycle is 0, oracle agreement") {
    CHECK(centralization(star_graph(8)) == 1.0);
    CHECK(centralization(cycle_graph(9)) == 0.0);
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const WeightedGraph g = oracle::random_binary_graph(25, 0.2, seed);
        CHECK(centralization(g) ==
              doctest::Approx(oracle::freeman_centralization(g)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(centralization(from_edges(2, {{0, 1}})), Error);
}

TEST_CASE("hhi variant is reported separately") {
    const WeightedGraph star = star_graph(5);
    const NetworkStats stats = network_stats(star);
    CHECK(stats.centralization == 1.0); // freeman is the selected variant
    // degrees 4,1,1,1,1 over total 8
    const double expected_hhi = (16.0 + 4.0) / 64.0;
    CHECK(stats.centralization_hhi == doctest::Approx(expected_hhi).epsilon(1e-12));
    CHECK(centralization(star, CentralizationVariant::Hhi) ==
          doctest::Approx(expected_hhi).epsilon(1e-12));
    CHECK(centralization(from_edges(3, {}), CentralizationVariant::Hhi) == 0.0);
}

TEST_CASE("complete graphs cluster fully with zero centralization") {
    for (std::size_t n : {3, 5, 9}) {
        CHECK(clustering_coefficient(complete_graph(n)) == 1.0);
        CHECK(centralization(complete_graph(n)) == 0.0);
    }
}

TEST_CASE("adding an edge never decreases density") {
    WeightedGraph g = from_edges(8, {{0, 1}, {2, 3}});
    double last = density(g);
    for (const auto& [i, j] : {std::pair{1, 2}, std::pair{4, 5}, std::pair{0, 7}}) {
        std::vector<double> w = g.weights();
        w[i * 8 + j] = w[j * 8 + i] = 1.0;
        g = WeightedGraph(g.node_ids(), std::move(w));
        CHECK(density(g) >= last);
        last = density(g);
    }
}

TEST_CASE("all four statistics are invariant under node relabeling") {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const WeightedGraph g = oracle::random_binary_graph(20, 0.25, seed);
        Rng rng(seed + 100);
        const auto perm = shuffled_indices(20, rng);
        const WeightedGraph h = relabeled(g, perm);
        CHECK(density(h) == doctest::Approx(density(g)).epsilon(1e-12));
        CHECK(clustering_coefficient(h) ==
              doctest::Approx(clustering_coefficient(g)).epsilon(1e-12));
        CHECK(centralization(h) == doctest::Approx(centralization(g)).epsilon(1e-12));
        CHECK(degree_distribution(h) == degree_distribution(g));
    }
}

TEST_CASE("stats JSON carries the variant names and the histogram") {
    const NetworkStats stats = network_stats(star_graph(4));
    const std::string json = stats.to_json_string();
    CHECK(json.find("\"clustering_variant\": \"avg-local\"") != std::string::npos);
    CHECK(json.find("\"centralization_variant\": \"freeman\"") != std::string::npos);
    CHECK(json.find("degree_histogram") != std::string::npos);
    CHECK(clustering_variant_from_string("transitivity") == ClusteringVariant::Transitivity);
    CHECK_THROWS_AS(clustering_variant_from_string("x"), Error);
    CHECK_THROWS_AS(centralization_variant_from_string("x"), Error);
}
