#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <set>

#include "core/audience.hpp"
#include "core/error.hpp"
#include "core/fileio.hpp"
#include "core/synth.hpp"
#include "support/tempdir.hpp"

using namespace dualweb;

TEST_CASE("config validation") {
    SynthConfig cfg;
    cfg.validate(); // defaults are coherent
    SynthConfig bad = cfg;
    bad.p_in = 0.01;
    bad.p_out = 0.02;
    CHECK_THROWS_AS(bad.validate(), Error); // cultural-proximity premise requires p_in > p_out
    bad = cfg;
    bad.ba_m = cfg.n_sites;
    CHECK_THROWS_AS(bad.validate(), Error);
    bad = cfg;
    bad.n_global_sites = cfg.n_sites;
    CHECK_THROWS_AS(bad.validate(), Error);

    const SynthConfig parsed = SynthConfig::from_json_string(
        R"({"n_sites": 50, "n_blocks": 2, "p_in": 0.3, "seed": 5})");
    CHECK(parsed.n_sites == 50);
    CHECK(parsed.n_blocks == 2);
    CHECK(parsed.p_in == 0.3);
    CHECK(parsed.seed == 5);
    CHECK(parsed.n_users == 10000); // untouched defaults stay
}

TEST_CASE("metadata: blocks carry distinct cultures, globals carry GLOBAL") {
    SynthConfig cfg;
    cfg.n_sites = 30;
    cfg.n_blocks = 4;
    cfg.n_global_sites = 5;
    const NodeSet nodes = synth_site_metadata(cfg);
    CHECK(nodes.size() == 30);
    std::set<std::string> geographies;
    std::size_t globals = 0;
    for (const auto& node : nodes.nodes()) {
        if (node.geography == kGlobalGeography) {
            ++globals;
        } else {
            geographies.insert(node.geography);
            CHECK(node.languages.size() == 1);
        }
    }
    CHECK(globals == 5);
    CHECK(geographies.size() == 4);
}

TEST_CASE("no cross-block visitation means no cross-block audience ties") {
    SynthConfig cfg;
    cfg.n_sites = 40;
    cfg.n_blocks = 4;
    cfg.n_global_sites = 0;
    cfg.n_users = 800;
    cfg.p_in = 0.3;
    cfg.p_out = 0.0;
    cfg.p_global = 0.0;
    cfg.seed = 3;
    const SynthAudience data = generate_audience_log(cfg);
    const WeightedGraph g = build_audience_graph(duplication_matrix(data.log, data.panel));
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (std::size_t j = i + 1; j < g.size(); ++j) {
            if (i % 4 != j % 4) CHECK(g.weight(i, j) == 0.0);
        }
    }
}

TEST_CASE("within-block duplication exceeds cross-block duplication") {
    SynthConfig cfg; // defaults, smaller population for speed
    cfg.n_sites = 60;
    cfg.n_users = 3000;
    cfg.seed = 42;
    const SynthAudience data = generate_audience_log(cfg);
    const DuplicationMatrix dup = duplication_matrix(data.log, data.panel);

    double within = 0.0, cross = 0.0;
    std::size_t n_within = 0, n_cross = 0;
    for (std::size_t i = 0; i < dup.size(); ++i) {
        if (data.nodes.at(i).geography == kGlobalGeography) continue;
        for (std::size_t j = i + 1; j < dup.size(); ++j) {
            if (data.nodes.at(j).geography == kGlobalGeography) continue;
            if (data.nodes.at(i).geography == data.nodes.at(j).geography) {
                within += dup.at(i, j);
                ++n_within;
            } else {
                cross += dup.at(i, j);
                ++n_cross;
            }
        }
    }
    CHECK(within / n_within > cross / n_cross);
}

TEST_CASE("zero users degenerate to an empty log with zero reach") {
    SynthConfig cfg;
    cfg.n_users = 0;
    cfg.n_sites = 10;
    cfg.n_global_sites = 2;
    const SynthAudience data = generate_audience_log(cfg);
    CHECK(data.log.user_count() == 0);
    for (double r : compute_reach(data.log, data.panel)) CHECK(r == 0.0);
}

TEST_CASE("attachment saturates when every predecessor must be linked") {
    SynthConfig cfg;
    cfg.n_sites = 4;
    cfg.ba_m = 3;
    cfg.n_global_sites = 0;
    cfg.n_users = 10;
    const DirectedCountGraph g = generate_hyperlink_graph(cfg);
    for (std::size_t i = 1; i < 4; ++i)
        for (std::size_t j = 0; j < i; ++j) CHECK(g.count(i, j) == 1);
}

TEST_CASE("preferential attachment concentrates in-degree") {
    SynthConfig cfg;
    cfg.seed = 42;
    const DirectedCountGraph g = generate_hyperlink_graph(cfg);
    std::vector<std::uint64_t> in_degree(g.size(), 0);
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (std::size_t j = 0; j < g.size(); ++j) {
            if (g.count(i, j) > 0) {
                ++in_degree[j];
                ++total;
            }
        }
    }
    std::sort(in_degree.rbegin(), in_degree.rend());
    const std::size_t top = g.size() / 100; // top 1%
    std::uint64_t top_sum = 0;
    for (std::size_t i = 0; i < top; ++i) top_sum += in_degree[i];
    const double share = static_cast<double>(top_sum) / static_cast<double>(total);
    const double uniform_share = static_cast<double>(top) / static_cast<double>(g.size());
    CHECK(share >= 5.0 * uniform_share);
}

TEST_CASE("owner cliques cross-link in both directions") {
    SynthConfig cfg;
    cfg.n_sites = 20;
    cfg.n_global_sites = 0;
    cfg.n_users = 10;
    cfg.owner_cliques = {{"site000.example", "site005.example", "site011.example"}};
    const DirectedCountGraph g = generate_hyperlink_graph(cfg);
    const NodeSet nodes = synth_site_metadata(cfg);
    const auto a = *nodes.index_of("site000.example");
    const auto b = *nodes.index_of("site005.example");
    const auto c = *nodes.index_of("site011.example");
    for (auto [x, y] : {std::pair{a, b}, {b, a}, {a, c}, {c, a}, {b, c}, {c, b}}) {
        CHECK(g.count(x, y) >= 1);
    }

    SynthConfig bad = cfg;
    bad.owner_cliques = {{"nonexistent.example"}};
    CHECK_THROWS_AS(generate_hyperlink_graph(bad), Error);
}

TEST_CASE("generators are bit-reproducible per seed") {
    SynthConfig cfg;
    cfg.n_sites = 30;
    cfg.n_users = 500;
    cfg.seed = 1234;

    testsupport::TempDir dir_a("synth_a");
    testsupport::TempDir dir_b("synth_b");
    write_synth_dataset(cfg, dir_a.str());
    write_synth_dataset(cfg, dir_b.str());
    for (const char* name : {"nodes.csv", "visits.csv", "panel.json", "edges.csv"}) {
        CHECK(read_text_file(dir_a.str(name)) == read_text_file(dir_b.str(name)));
    }

    // a different seed gives different data
    SynthConfig other = cfg;
    other.seed = 4321;
    testsupport::TempDir dir_c("synth_c");
    write_synth_dataset(other, dir_c.str());
    CHECK(read_text_file(dir_a.str("visits.csv")) != read_text_file(dir_c.str("visits.csv")));
}

TEST_CASE("audience and hyperlink rosters line up") {
    SynthConfig cfg;
    cfg.n_sites = 25;
    cfg.n_users = 100;
    const SynthAudience data = generate_audience_log(cfg);
    const DirectedCountGraph links = generate_hyperlink_graph(cfg);
    CHECK(data.nodes.ids() == links.node_ids());
}
