// dualweb command line: subcommand front end over the shared library's C API.
// Core computation stays behind dualweb/dualweb.h; this file only parses
// flags, moves files around and formats output.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "dualweb/dualweb.h"

namespace {

int fail(dw_status) {
    std::cerr << "error: " << dw_last_error() << "\n";
    return 1;
}

std::string read_file_or_die(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot read " << path << "\n";
        std::exit(1);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("DUALWEB_SEED")) {
        return std::strtoull(env, nullptr, 10);
    }
    return 42;
}

struct GraphHandle {
    dw_graph* g = nullptr;
    ~GraphHandle() { dw_graph_free(g); }
};
struct NodesetHandle {
    dw_nodeset* ns = nullptr;
    ~NodesetHandle() { dw_nodeset_free(ns); }
};
struct PartitionHandle {
    dw_partition* p = nullptr;
    ~PartitionHandle() { dw_partition_free(p); }
};
struct LayoutHandle {
    dw_layout* l = nullptr;
    ~LayoutHandle() { dw_layout_free(l); }
};
struct StringHandle {
    char* s = nullptr;
    ~StringHandle() { dw_string_free(s); }
};

dw_clustering parse_clustering(const std::string& name) {
    if (name == "avg-local") return DW_CLUSTERING_AVG_LOCAL;
    if (name == "transitivity") return DW_CLUSTERING_TRANSITIVITY;
    std::cerr << "error: unknown clustering variant " << name << "\n";
    std::exit(1);
}

dw_centralization parse_centralization(const std::string& name) {
    if (name == "freeman") return DW_CENTRALIZATION_FREEMAN;
    if (name == "hhi") return DW_CENTRALIZATION_HHI;
    std::cerr << "error: unknown centralization variant " << name << "\n";
    std::exit(1);
}

dw_symmetrize_rule parse_symmetrize(const std::string& name) {
    if (name == "sum") return DW_SYMMETRIZE_SUM;
    if (name == "max") return DW_SYMMETRIZE_MAX;
    if (name == "or") return DW_SYMMETRIZE_OR;
    std::cerr << "error: unknown symmetrize rule " << name << "\n";
    std::exit(1);
}

dw_qap_tail parse_tail(const std::string& name) {
    if (name == "two_sided") return DW_QAP_TWO_SIDED;
    if (name == "greater") return DW_QAP_GREATER;
    if (name == "less") return DW_QAP_LESS;
    std::cerr << "error: unknown tail " << name << "\n";
    std::exit(1);
}

dw_qap_transform parse_transform(const std::string& name) {
    if (name == "none") return DW_QAP_TRANSFORM_NONE;
    if (name == "log1p") return DW_QAP_TRANSFORM_LOG1P;
    if (name == "rank") return DW_QAP_TRANSFORM_RANK;
    std::cerr << "error: unknown transform " << name << "\n";
    std::exit(1);
}

void print_report_table(const nlohmann::json& report) {
    if (!report.contains("table")) return;
    std::printf("%-26s %14s %14s\n", "statistic", "hyperlink", "audience");
    for (const auto& row : report.at("table")) {
        std::printf("%-26s %14.6g %14.6g\n", row.at("statistic").get<std::string>().c_str(),
                    row.at("hyperlink").get<double>(), row.at("audience").get<double>());
    }
    if (report.contains("qap")) {
        std::printf("%-26s %14s %14.6g\n", "qap_r", "",
                    report.at("qap").at("r_observed").get<double>());
        std::printf("%-26s %14s %14.6g\n", "qap_p", "",
                    report.at("qap").at("p_value").get<double>());
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dual network maps of a website sample: audience vs hyperlink structure"};
    app.require_subcommand(1);

    // ---- synth ----
    auto* synth = app.add_subcommand("synth", "generate a paired synthetic dataset");
    std::string synth_config;
    std::string synth_out_dir = "data";
    std::uint64_t synth_seed = default_seed();
    synth->add_option("--config", synth_config, "generator config JSON file");
    synth->add_option("--out-dir", synth_out_dir, "output directory")->required();
    synth->add_option("--seed", synth_seed, "seed override");
    synth->callback([&] {
        nlohmann::json cfg = synth_config.empty()
                                 ? nlohmann::json::object()
                                 : nlohmann::json::parse(read_file_or_die(synth_config));
        if (!cfg.contains("seed") || synth->count("--seed")) cfg["seed"] = synth_seed;
        const dw_status status = dw_synth(cfg.dump().c_str(), synth_out_dir.c_str());
        if (status != DW_OK) std::exit(fail(status));
        std::cout << "wrote dataset to " << synth_out_dir << "\n";
    });

    // ---- crawl ----
    auto* crawl = app.add_subcommand("crawl", "crawl seed sites and count inter-seed links");
    std::string crawl_config, crawl_out = "edges.csv", crawl_report = "crawl_report.json";
    crawl->add_option("--config", crawl_config, "crawl config JSON file")->required();
    crawl->add_option("--out", crawl_out, "directed edge-list CSV output");
    crawl->add_option("--report", crawl_report, "crawl report JSON output");
    crawl->callback([&] {
        const std::string cfg = read_file_or_die(crawl_config);
        const dw_status status = dw_crawl(cfg.c_str(), crawl_out.c_str(), crawl_report.c_str());
        if (status != DW_OK) std::exit(fail(status));
        std::cout << "wrote " << crawl_out << " and " << crawl_report << "\n";
    });

    // ---- build-audience ----
    auto* build_audience =
        app.add_subcommand("build-audience", "visitation log -> audience graph");
    std::string ba_meta, ba_log, ba_panel, ba_out = "audience.json";
    double ba_margin = 0.0;
    build_audience->add_option("--meta", ba_meta, "node metadata CSV")->required();
    build_audience->add_option("--log", ba_log, "visitation log CSV")->required();
    build_audience->add_option("--panel", ba_panel, "panel descriptor JSON")->required();
    build_audience->add_option("--min-margin", ba_margin,
                               "extra duplication required above the expectation");
    build_audience->add_option("--out", ba_out, "graph JSON output");
    build_audience->callback([&] {
        const dw_status status = dw_build_audience(ba_meta.c_str(), ba_log.c_str(),
                                                   ba_panel.c_str(), ba_margin, ba_out.c_str());
        if (status != DW_OK) std::exit(fail(status));
        std::cout << "wrote " << ba_out << "\n";
    });

    // ---- build-hyperlink ----
    auto* build_hyperlink =
        app.add_subcommand("build-hyperlink", "directed edge list -> hyperlink graph");
    std::string bh_meta, bh_edges, bh_out = "hyperlink.json", bh_report;
    std::string bh_rule = "sum";
    build_hyperlink->add_option("--meta", bh_meta, "node metadata CSV")->required();
    build_hyperlink->add_option("--edges", bh_edges, "directed edge-list CSV")->required();
    build_hyperlink->add_option("--symmetrize", bh_rule, "sum|max|or");
    build_hyperlink->add_option("--out", bh_out, "graph JSON output");
    build_hyperlink->add_option("--ingest-report", bh_report, "ingest report JSON output");
    build_hyperlink->callback([&] {
        const dw_status status =
            dw_build_hyperlink(bh_meta.c_str(), bh_edges.c_str(), parse_symmetrize(bh_rule),
                               bh_out.c_str(), bh_report.empty() ? nullptr : bh_report.c_str());
        if (status != DW_OK) std::exit(fail(status));
        std::cout << "wrote " << bh_out << "\n";
    });

    // ---- metrics ----
    auto* metrics = app.add_subcommand("metrics", "descriptive statistics of a graph");
    std::string m_graph, m_out = "stats.json", m_ccdf, m_plot;
    std::string m_clustering = "avg-local", m_centralization = "freeman";
    metrics->add_option("--graph", m_graph, "graph JSON")->required();
    metrics->add_option("--out", m_out, "stats JSON output");
    metrics->add_option("--ccdf", m_ccdf, "degree CCDF CSV output");
    metrics->add_option("--plot", m_plot, "degree distribution SVG output");
    metrics->add_option("--clustering", m_clustering, "avg-local|transitivity");
    metrics->add_option("--centralization", m_centralization, "freeman|hhi");
    metrics->callback([&] {
        GraphHandle g;
        dw_status status = dw_graph_load_json(m_graph.c_str(), &g.g);
        if (status != DW_OK) std::exit(fail(status));
        GraphHandle binary;
        status = dw_graph_dichotomize(g.g, &binary.g);
        if (status != DW_OK) std::exit(fail(status));
        status = dw_metrics_to_files(binary.g, parse_clustering(m_clustering),
                                     parse_centralization(m_centralization), m_out.c_str(),
                                     m_ccdf.empty() ? nullptr : m_ccdf.c_str(),
                                     m_plot.empty() ? nullptr : m_plot.c_str());
        if (status != DW_OK) std::exit(fail(status));
        std::cout << read_file_or_die(m_out);
    });

    // ---- communities ----
    auto* communities = app.add_subcommand("communities", "weighted modularity communities");
    std::string c_graph, c_out = "partition.json";
    std::uint64_t c_seed = default_seed();
    double c_resolution = 1.0;
    int c_restarts = 5;
    communities->add_option("--graph", c_graph, "graph JSON")->required();
    communities->add_option("--seed", c_seed, "seed");
    communities->add_option("--resolution", c_resolution, "resolution parameter");
    communities->add_option("--restarts", c_restarts, "independent restarts");
    communities->add_option("--out", c_out, "partition JSON output");
    communities->callback([&] {
        GraphHandle g;
        dw_status status = dw_graph_load_json(c_graph.c_str(), &g.g);
        if (status != DW_OK) std::exit(fail(status));
        PartitionHandle p;
        status = dw_communities(g.g, c_seed, c_resolution, c_restarts, &p.p);
        if (status != DW_OK) std::exit(fail(status));
        status = dw_partition_save_json(p.p, c_out.c_str());
        if (status != DW_OK) std::exit(fail(status));
        double q = 0.0;
        size_t count = 0;
        dw_partition_q(p.p, &q);
        dw_partition_community_count(p.p, &count);
        std::cout << "communities: " << count << "  q: " << q << "  -> " << c_out << "\n";
    });

    // ---- qap ----
    auto* qap = app.add_subcommand("qap", "QAP correlation between two graphs");
    std::string q_a, q_b, q_out = "qap.json";
    std::string q_tail = "two_sided", q_transform = "none";
    int q_perms = 1000;
    std::uint64_t q_seed = default_seed();
    qap->add_option("--a", q_a, "first graph JSON")->required();
    qap->add_option("--b", q_b, "second graph JSON")->required();
    qap->add_option("--perms", q_perms, "permutations");
    qap->add_option("--seed", q_seed, "seed");
    qap->add_option("--tail", q_tail, "two_sided|greater|less");
    qap->add_option("--transform", q_transform, "none|log1p|rank");
    qap->add_option("--out", q_out, "result JSON output");
    qap->callback([&] {
        GraphHandle a, b;
        dw_status status = dw_graph_load_json(q_a.c_str(), &a.g);
        if (status != DW_OK) std::exit(fail(status));
        status = dw_graph_load_json(q_b.c_str(), &b.g);
        if (status != DW_OK) std::exit(fail(status));
        StringHandle json;
        status = dw_qap(a.g, b.g, q_perms, q_seed, parse_tail(q_tail),
                        parse_transform(q_transform), &json.s);
        if (status != DW_OK) std::exit(fail(status));
        std::ofstream out(q_out, std::ios::binary);
        out << json.s;
        std::cout << json.s;
    });

    // ---- layout ----
    auto* layout = app.add_subcommand("layout", "force-directed layout");
    std::string l_graph, l_out = "pos.json";
    int l_iterations = 500;
    std::uint64_t l_seed = default_seed();
    double l_width = 1000.0, l_height = 1000.0;
    layout->add_option("--graph", l_graph, "graph JSON")->required();
    layout->add_option("--iterations", l_iterations, "iterations");
    layout->add_option("--seed", l_seed, "seed");
    layout->add_option("--width", l_width, "frame width");
    layout->add_option("--height", l_height, "frame height");
    layout->add_option("--out", l_out, "positions JSON output");
    layout->callback([&] {
        GraphHandle g;
        dw_status status = dw_graph_load_json(l_graph.c_str(), &g.g);
        if (status != DW_OK) std::exit(fail(status));
        LayoutHandle pos;
        status = dw_layout_compute(g.g, l_iterations, l_seed, l_width, l_height, &pos.l);
        if (status != DW_OK) std::exit(fail(status));
        status = dw_layout_save_json(pos.l, l_out.c_str());
        if (status != DW_OK) std::exit(fail(status));
        std::cout << "wrote " << l_out << "\n";
    });

    // ---- render ----
    auto* render = app.add_subcommand("render", "SVG map of a laid-out graph");
    std::string r_graph, r_pos, r_partition, r_meta, r_out = "map.svg";
    double r_quantile = 0.2;
    render->add_option("--graph", r_graph, "graph JSON")->required();
    render->add_option("--pos", r_pos, "positions JSON")->required();
    render->add_option("--partition", r_partition, "partition JSON")->required();
    render->add_option("--meta", r_meta, "node metadata CSV")->required();
    render->add_option("--edge-quantile", r_quantile, "top weight share of edges to draw");
    render->add_option("--out", r_out, "SVG output");
    render->callback([&] {
        GraphHandle g;
        dw_status status = dw_graph_load_json(r_graph.c_str(), &g.g);
        if (status != DW_OK) std::exit(fail(status));
        LayoutHandle pos;
        status = dw_layout_load_json(r_pos.c_str(), &pos.l);
        if (status != DW_OK) std::exit(fail(status));
        PartitionHandle part;
        status = dw_partition_load_json(r_partition.c_str(), &part.p);
        if (status != DW_OK) std::exit(fail(status));
        NodesetHandle meta;
        status = dw_nodeset_load_csv(r_meta.c_str(), &meta.ns);
        if (status != DW_OK) std::exit(fail(status));
        status = dw_render_svg(g.g, pos.l, part.p, meta.ns, r_quantile, r_out.c_str());
        if (status != DW_OK) std::exit(fail(status));
        std::cout << "wrote " << r_out << "\n";
    });

    // ---- reproduce ----
    auto* reproduce = app.add_subcommand(
        "reproduce", "one-shot pipeline: synth (default) or user data -> full comparison");
    std::string rp_config, rp_out_dir = "out";
    std::uint64_t rp_seed = default_seed();
    reproduce->add_option("--config", rp_config, "pipeline config JSON file");
    reproduce->add_option("--out-dir", rp_out_dir, "output directory");
    reproduce->add_option("--seed", rp_seed, "global seed override");
    reproduce->callback([&] {
        nlohmann::json cfg = rp_config.empty()
                                 ? nlohmann::json::object()
                                 : nlohmann::json::parse(read_file_or_die(rp_config));
        if (!cfg.contains("seed") || reproduce->count("--seed")) cfg["seed"] = rp_seed;
        StringHandle report_json;
        const dw_status status =
            dw_reproduce(cfg.dump().c_str(), rp_out_dir.c_str(), &report_json.s);
        if (status != DW_OK) std::exit(fail(status));
        print_report_table(nlohmann::json::parse(report_json.s));
        std::cout << "report: " << rp_out_dir << "/report.json\n";
    });

    CLI11_PARSE(app, argc, argv);
    return 0;
}
