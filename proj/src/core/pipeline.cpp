#include "core/pipeline.hpp"

#include <filesystem>
#include <functional>

#include "core/audience.hpp"
#include "core/communities.hpp"
#include "core/error.hpp"
#include "core/fileio.hpp"
#include "core/graph.hpp"
#include "core/hyperlink.hpp"
#include "core/layout.hpp"
#include "core/metrics.hpp"
#include "core/qap.hpp"
#include "core/rng.hpp"
#include "core/svg.hpp"
#include "core/synth.hpp"

namespace dualweb {

namespace {

// stage seed streams under the one global seed
constexpr std::uint64_t kStreamCommunitiesAudience = 101;
constexpr std::uint64_t kStreamCommunitiesHyperlink = 102;
constexpr std::uint64_t kStreamQap = 103;
constexpr std::uint64_t kStreamLayoutAudience = 104;
constexpr std::uint64_t kStreamLayoutHyperlink = 105;

nlohmann::json effective_config(const std::string& config_text) {
    nlohmann::json user;
    try {
        user = config_text.empty() ? nlohmann::json::object() : nlohmann::json::parse(config_text);
    } catch (const nlohmann::json::exception& e) {
        throw_parse(std::string("reproduce config: ") + e.what());
    }
    if (!user.is_object()) throw_parse("reproduce config: expected a JSON object");

    nlohmann::json cfg;
    cfg["seed"] = user.value("seed", std::uint64_t{42});
    if (user.contains("inputs")) {
        cfg["inputs"] = user.at("inputs");
    } else {
        // synthetic run: materialize generator defaults so the report pins them
        nlohmann::json synth = user.value("synth", nlohmann::json::object());
        SynthConfig defaults;
        synth["n_sites"] = synth.value("n_sites", defaults.n_sites);
        synth["n_blocks"] = synth.value("n_blocks", defaults.n_blocks);
        synth["n_global_sites"] = synth.value("n_global_sites", defaults.n_global_sites);
        synth["n_users"] = synth.value("n_users", defaults.n_users);
        synth["p_in"] = synth.value("p_in", defaults.p_in);
        synth["p_out"] = synth.value("p_out", defaults.p_out);
        synth["p_global"] = synth.value("p_global", defaults.p_global);
        synth["ba_m"] = synth.value("ba_m", defaults.ba_m);
        if (!synth.contains("owner_cliques")) synth["owner_cliques"] = nlohmann::json::array();
        if (!synth.contains("seed")) synth["seed"] = cfg["seed"];
        cfg["synth"] = std::move(synth);
    }

    const nlohmann::json audience = user.value("audience", nlohmann::json::object());
    cfg["audience"]["min_margin"] = audience.value("min_margin", 0.0);

    const nlohmann::json hyperlink = user.value("hyperlink", nlohmann::json::object());
    cfg["hyperlink"]["symmetrize"] = hyperlink.value("symmetrize", "sum");

    const nlohmann::json metrics = user.value("metrics", nlohmann::json::object());
    cfg["metrics"]["clustering"] = metrics.value("clustering", "avg-local");
    cfg["metrics"]["centralization"] = metrics.value("centralization", "freeman");

    const nlohmann::json communities = user.value("communities", nlohmann::json::object());
    cfg["communities"]["resolution"] = communities.value("resolution", 1.0);
    cfg["communities"]["restarts"] = communities.value("restarts", 5);

    const nlohmann::json qap = user.value("qap", nlohmann::json::object());
    cfg["qap"]["permutations"] = qap.value("permutations", 1000);
    cfg["qap"]["tail"] = qap.value("tail", "two_sided");
    cfg["qap"]["transform"] = qap.value("transform", "none");

    const nlohmann::json layout = user.value("layout", nlohmann::json::object());
    cfg["layout"]["iterations"] = layout.value("iterations", 500);
    cfg["layout"]["width"] = layout.value("width", 1000.0);
    cfg["layout"]["height"] = layout.value("height", 1000.0);

    const nlohmann::json render = user.value("render", nlohmann::json::object());
    cfg["render"]["edge_quantile"] = render.value("edge_quantile", 0.2);
    return cfg;
}

template <typename Fn>
auto stage(const char* name, Fn&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        throw Error(e.kind(), std::string("stage ") + name + ": " + e.what());
    }
}

} // namespace

nlohmann::json reproduce(const std::string& config_text, const std::string& out_dir) {
    const nlohmann::json cfg = effective_config(config_text);
    std::filesystem::create_directories(out_dir);
    const auto out_path = [&](const std::string& name) {
        return (std::filesystem::path(out_dir) / name).string();
    };
    const std::uint64_t seed = cfg.at("seed").get<std::uint64_t>();

    nlohmann::json report;
    report["config"] = cfg;
    report["seed"] = seed;
    nlohmann::json artifacts;

    // --- input data: synthesize or read user files -------------------------
    std::string metadata_path, log_path, panel_path, edges_path;
    if (cfg.contains("synth")) {
        stage("synth", [&] {
            const SynthConfig synth_cfg = SynthConfig::from_json_string(cfg.at("synth").dump());
            const std::string data_dir = out_path("data");
            write_synth_dataset(synth_cfg, data_dir);
            return 0;
        });
        metadata_path = out_path("data/nodes.csv");
        log_path = out_path("data/visits.csv");
        panel_path = out_path("data/panel.json");
        edges_path = out_path("data/edges.csv");
        artifacts["data_dir"] = "data";
    } else {
        const auto& inputs = cfg.at("inputs");
        for (const char* key : {"metadata", "log", "panel", "edges"}) {
            if (!inputs.contains(key)) {
                throw_invalid(std::string("reproduce config: inputs.") + key + " is required");
            }
            const auto path = inputs.at(key).get<std::string>();
            if (!std::filesystem::exists(path)) {
                throw_invalid(std::string("reproduce config: inputs.") + key + " does not exist: " + path);
            }
        }
        metadata_path = inputs.at("metadata").get<std::string>();
        log_path = inputs.at("log").get<std::string>();
        panel_path = inputs.at("panel").get<std::string>();
        edges_path = inputs.at("edges").get<std::string>();
    }

    const NodeSet nodes = stage("load-metadata", [&] { return NodeSet::load_csv(metadata_path); });

    // --- builders -----------------------------------------------------------
    WeightedGraph audience_raw = stage("build-audience", [&] {
        const Panel panel = Panel::load_json(panel_path);
        const VisitationLog log = VisitationLog::load_csv(log_path, nodes);
        const DuplicationMatrix dup = duplication_matrix(log, panel);
        return build_audience_graph(dup, cfg.at("audience").at("min_margin").get<double>());
    });
    WeightedGraph hyperlink_raw = stage("build-hyperlink", [&] {
        const auto rule =
            symmetrize_rule_from_string(cfg.at("hyperlink").at("symmetrize").get<std::string>());
        IngestReport ingest;
        const DirectedCountGraph directed = ingest_edge_list(edges_path, nodes, &ingest);
        write_text_file(out_path("ingest_report.json"), ingest.to_json_string());
        return build_hyperlink_graph(directed, rule);
    });
    artifacts["ingest_report"] = "ingest_report.json";

    const auto [audience, hyperlink] =
        stage("align", [&] { return align_common(audience_raw, hyperlink_raw); });
    stage("save-graphs", [&] {
        audience.save_json(out_path("audience.json"));
        hyperlink.save_json(out_path("hyperlink.json"));
        audience.save_edge_csv(out_path("audience_edges.csv"));
        hyperlink.save_edge_csv(out_path("hyperlink_edges.csv"));
        return 0;
    });
    artifacts["audience_graph"] = "audience.json";
    artifacts["hyperlink_graph"] = "hyperlink.json";

    // --- metrics (dichotomized view) ----------------------------------------
    const auto cvar =
        clustering_variant_from_string(cfg.at("metrics").at("clustering").get<std::string>());
    const auto zvar = centralization_variant_from_string(
        cfg.at("metrics").at("centralization").get<std::string>());
    const WeightedGraph audience_binary = dichotomize(audience);
    const WeightedGraph hyperlink_binary = dichotomize(hyperlink);

    const NetworkStats audience_stats =
        stage("metrics-audience", [&] { return network_stats(audience_binary, cvar, zvar); });
    const NetworkStats hyperlink_stats =
        stage("metrics-hyperlink", [&] { return network_stats(hyperlink_binary, cvar, zvar); });
    stage("save-metrics", [&] {
        write_text_file(out_path("audience_stats.json"), audience_stats.to_json_string());
        write_text_file(out_path("hyperlink_stats.json"), hyperlink_stats.to_json_string());
        save_ccdf_csv(degree_ccdf(audience_binary), out_path("audience_ccdf.csv"));
        save_ccdf_csv(degree_ccdf(hyperlink_binary), out_path("hyperlink_ccdf.csv"));
        save_degree_ccdf_svg(degree_ccdf(audience_binary), out_path("audience_degrees.svg"));
        save_degree_ccdf_svg(degree_ccdf(hyperlink_binary), out_path("hyperlink_degrees.svg"));
        return 0;
    });
    artifacts["audience_stats"] = "audience_stats.json";
    artifacts["hyperlink_stats"] = "hyperlink_stats.json";

    // --- communities on the valued graphs, then purity ----------------------
    const double resolution = cfg.at("communities").at("resolution").get<double>();
    const int restarts = cfg.at("communities").at("restarts").get<int>();
    const CommunityPartition audience_partition = stage("communities-audience", [&] {
        return detect_communities(audience, derive_seed(seed, kStreamCommunitiesAudience),
                                  resolution, restarts);
    });
    const CommunityPartition hyperlink_partition = stage("communities-hyperlink", [&] {
        return detect_communities(hyperlink, derive_seed(seed, kStreamCommunitiesHyperlink),
                                  resolution, restarts);
    });
    audience_partition.save_json(out_path("audience_partition.json"));
    hyperlink_partition.save_json(out_path("hyperlink_partition.json"));

    const PurityResult audience_geo = stage("purity-audience", [&] {
        return cluster_purity(audience_partition, nodes, PurityAttribute::Geography);
    });
    const PurityResult audience_lang =
        cluster_purity(audience_partition, nodes, PurityAttribute::Language);
    const PurityResult hyperlink_geo = stage("purity-hyperlink", [&] {
        return cluster_purity(hyperlink_partition, nodes, PurityAttribute::Geography);
    });
    const PurityResult hyperlink_lang =
        cluster_purity(hyperlink_partition, nodes, PurityAttribute::Language);
    write_text_file(out_path("audience_purity.json"), audience_geo.to_json_string());
    write_text_file(out_path("hyperlink_purity.json"), hyperlink_geo.to_json_string());

    // --- QAP between the valued tie matrices --------------------------------
    const QapResult qap = stage("qap", [&] {
        const auto transform =
            weight_transform_from_string(cfg.at("qap").at("transform").get<std::string>());
        const WeightedGraph a = transform_weights(audience, transform);
        const WeightedGraph b = transform_weights(hyperlink, transform);
        return qap_correlation(a, b,
                               cfg.at("qap").at("permutations").get<std::size_t>(),
                               derive_seed(seed, kStreamQap),
                               qap_tail_from_string(cfg.at("qap").at("tail").get<std::string>()));
    });
    write_text_file(out_path("qap.json"), qap.to_json_string());
    artifacts["qap"] = "qap.json";

    // --- layouts and maps ----------------------------------------------------
    const int iterations = cfg.at("layout").at("iterations").get<int>();
    const double width = cfg.at("layout").at("width").get<double>();
    const double height = cfg.at("layout").at("height").get<double>();
    const double edge_quantile = cfg.at("render").at("edge_quantile").get<double>();
    stage("layout-render", [&] {
        const LayoutResult audience_layout = fr_layout(
            audience, iterations, derive_seed(seed, kStreamLayoutAudience), width, height);
        const LayoutResult hyperlink_layout = fr_layout(
            hyperlink, iterations, derive_seed(seed, kStreamLayoutHyperlink), width, height);
        audience_layout.save_json(out_path("audience_layout.json"));
        hyperlink_layout.save_json(out_path("hyperlink_layout.json"));
        save_network_svg(audience, audience_layout, audience_partition, nodes,
                         out_path("audience.svg"), edge_quantile);
        save_network_svg(hyperlink, hyperlink_layout, hyperlink_partition, nodes,
                         out_path("hyperlink.svg"), edge_quantile);
        return 0;
    });
    artifacts["audience_map"] = "audience.svg";
    artifacts["hyperlink_map"] = "hyperlink.svg";

    // --- report --------------------------------------------------------------
    auto network_section = [](const NetworkStats& stats, const CommunityPartition& partition,
                              const PurityResult& geo, const PurityResult& lang) {
        nlohmann::json section;
        section["n_nodes"] = stats.n_nodes;
        section["n_ties"] = stats.n_ties;
        section["density"] = stats.density;
        section["clustering_coefficient"] = stats.clustering_coefficient;
        section["centralization"] = stats.centralization;
        section["centralization_hhi"] = stats.centralization_hhi;
        section["n_communities"] = partition.n_communities;
        section["modularity_q"] = partition.modularity_q;
        section["purity_geography"] =
            geo.weighted_mean ? nlohmann::json(*geo.weighted_mean) : nlohmann::json(nullptr);
        section["purity_language"] =
            lang.weighted_mean ? nlohmann::json(*lang.weighted_mean) : nlohmann::json(nullptr);
        return section;
    };
    report["audience"] =
        network_section(audience_stats, audience_partition, audience_geo, audience_lang);
    report["hyperlink"] =
        network_section(hyperlink_stats, hyperlink_partition, hyperlink_geo, hyperlink_lang);

    nlohmann::json qap_section;
    qap_section["r_observed"] = qap.r_observed;
    qap_section["p_value"] = qap.p_value;
    qap_section["n_permutations"] = qap.n_permutations;
    qap_section["method"] = qap.exhaustive ? "exhaustive" : "monte_carlo";
    report["qap"] = std::move(qap_section);

    // side-by-side rows in the shape of the headline comparison
    nlohmann::json table = nlohmann::json::array();
    auto table_row = [&](const std::string& name, double h, double a) {
        table.push_back({{"statistic", name}, {"hyperlink", h}, {"audience", a}});
    };
    table_row("n_nodes", static_cast<double>(hyperlink_stats.n_nodes),
              static_cast<double>(audience_stats.n_nodes));
    table_row("n_ties", static_cast<double>(hyperlink_stats.n_ties),
              static_cast<double>(audience_stats.n_ties));
    table_row("density", hyperlink_stats.density, audience_stats.density);
    table_row("clustering_coefficient", hyperlink_stats.clustering_coefficient,
              audience_stats.clustering_coefficient);
    table_row("centralization", hyperlink_stats.centralization, audience_stats.centralization);
    table_row("n_communities", static_cast<double>(hyperlink_partition.n_communities),
              static_cast<double>(audience_partition.n_communities));
    report["table"] = std::move(table);

    nlohmann::json checks;
    checks["audience_clustering_greater"] =
        audience_stats.clustering_coefficient > hyperlink_stats.clustering_coefficient;
    checks["audience_centralization_lower"] =
        audience_stats.centralization < hyperlink_stats.centralization;
    checks["audience_density_greater"] = audience_stats.density > hyperlink_stats.density;
    checks["clustering_delta"] =
        audience_stats.clustering_coefficient - hyperlink_stats.clustering_coefficient;
    checks["centralization_delta"] = hyperlink_stats.centralization - audience_stats.centralization;
    checks["density_delta"] = audience_stats.density - hyperlink_stats.density;
    report["directional_checks"] = std::move(checks);

    report["artifacts"] = std::move(artifacts);
    write_text_file(out_path("report.json"), report.dump(2) + "\n");
    return report;
}

} // namespace dualweb
