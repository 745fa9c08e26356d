#include "dualweb/dualweb.h"

#include <cstring>
#include <string>

#include "core/audience.hpp"
#include "core/communities.hpp"
#include "core/crawler.hpp"
#include "core/error.hpp"
#include "core/fileio.hpp"
#include "core/graph.hpp"
#include "core/hyperlink.hpp"
#include "core/layout.hpp"
#include "core/metrics.hpp"
#include "core/nodeset.hpp"
#include "core/pipeline.hpp"
#include "core/qap.hpp"
#include "core/svg.hpp"
#include "core/synth.hpp"
#include "core/url.hpp"

// Opaque handle definitions. Each wraps exactly one core object; lifetime is
// the caller's via the matching *_free.
struct dw_nodeset {
    dualweb::NodeSet impl;
};
struct dw_graph {
    dualweb::WeightedGraph impl;
};
struct dw_partition {
    dualweb::CommunityPartition impl;
};
struct dw_layout {
    dualweb::LayoutResult impl;
};

namespace {

thread_local std::string g_last_error;

dw_status status_of(const dualweb::Error& e) {
    using Kind = dualweb::Error::Kind;
    switch (e.kind()) {
        case Kind::Io: return DW_ERR_IO;
        case Kind::Parse: return DW_ERR_PARSE;
        case Kind::Invalid: return DW_ERR_INVALID;
        case Kind::Domain: return DW_ERR_DOMAIN;
        case Kind::Internal: return DW_ERR_INTERNAL;
    }
    return DW_ERR_INTERNAL;
}

// All entry points funnel through here: success clears the thread-local
// message, any exception becomes a status code.
template <typename Fn>
dw_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return DW_OK;
    } catch (const dualweb::Error& e) {
        g_last_error = e.what();
        return status_of(e);
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return DW_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return DW_ERR_INTERNAL;
    }
}

dw_status invalid_arg(const char* what) {
    g_last_error = std::string("invalid argument: ") + what;
    return DW_ERR_INVALID;
}

char* copy_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

dualweb::SymmetrizeRule to_core(dw_symmetrize_rule rule) {
    switch (rule) {
        case DW_SYMMETRIZE_SUM: return dualweb::SymmetrizeRule::Sum;
        case DW_SYMMETRIZE_MAX: return dualweb::SymmetrizeRule::Max;
        case DW_SYMMETRIZE_OR: return dualweb::SymmetrizeRule::Or;
    }
    dualweb::throw_invalid("unknown symmetrize rule");
}

dualweb::ClusteringVariant to_core(dw_clustering v) {
    switch (v) {
        case DW_CLUSTERING_AVG_LOCAL: return dualweb::ClusteringVariant::AverageLocal;
        case DW_CLUSTERING_TRANSITIVITY: return dualweb::ClusteringVariant::Transitivity;
    }
    dualweb::throw_invalid("unknown clustering variant");
}

dualweb::CentralizationVariant to_core(dw_centralization v) {
    switch (v) {
        case DW_CENTRALIZATION_FREEMAN: return dualweb::CentralizationVariant::Freeman;
        case DW_CENTRALIZATION_HHI: return dualweb::CentralizationVariant::Hhi;
    }
    dualweb::throw_invalid("unknown centralization variant");
}

dualweb::QapTail to_core(dw_qap_tail t) {
    switch (t) {
        case DW_QAP_TWO_SIDED: return dualweb::QapTail::TwoSided;
        case DW_QAP_GREATER: return dualweb::QapTail::Greater;
        case DW_QAP_LESS: return dualweb::QapTail::Less;
    }
    dualweb::throw_invalid("unknown tail");
}

dualweb::WeightTransform to_core(dw_qap_transform t) {
    switch (t) {
        case DW_QAP_TRANSFORM_NONE: return dualweb::WeightTransform::None;
        case DW_QAP_TRANSFORM_LOG1P: return dualweb::WeightTransform::Log1p;
        case DW_QAP_TRANSFORM_RANK: return dualweb::WeightTransform::Rank;
    }
    dualweb::throw_invalid("unknown transform");
}

} // namespace

extern "C" {

const char* dw_version(void) { return "0.1.0"; }

const char* dw_last_error(void) { return g_last_error.c_str(); }

void dw_string_free(char* s) { delete[] s; }

/* ---- nodes ---- */

dw_status dw_nodeset_load_csv(const char* path, dw_nodeset** out) {
    if (!path || !out) return invalid_arg("path and out must be non-null");
    return guarded([&] { *out = new dw_nodeset{dualweb::NodeSet::load_csv(path)}; });
}

dw_status dw_nodeset_size(const dw_nodeset* ns, size_t* out) {
    if (!ns || !out) return invalid_arg("ns and out must be non-null");
    *out = ns->impl.size();
    g_last_error.clear();
    return DW_OK;
}

dw_status dw_nodeset_id(const dw_nodeset* ns, size_t index, const char** out) {
    if (!ns || !out) return invalid_arg("ns and out must be non-null");
    return guarded([&] {
        if (index >= ns->impl.size()) dualweb::throw_invalid("node index out of range");
        *out = ns->impl.at(index).id.c_str();
    });
}

dw_status dw_nodeset_geography(const dw_nodeset* ns, const char* id, const char** out) {
    if (!ns || !id || !out) return invalid_arg("ns, id and out must be non-null");
    return guarded([&] {
        const dualweb::SiteNode* node = ns->impl.find(id);
        if (!node) dualweb::throw_invalid(std::string("unknown node: ") + id);
        *out = node->geography.c_str();
    });
}

dw_status dw_nodeset_resolve_url(const dw_nodeset* ns, const char* url, const char** out_id) {
    if (!ns || !url || !out_id) return invalid_arg("ns, url and out_id must be non-null");
    return guarded([&] {
        const auto parsed = dualweb::parse_url(url);
        if (!parsed) dualweb::throw_invalid(std::string("not an absolute http(s) URL: ") + url);
        const auto idx = ns->impl.resolve_host(parsed->host);
        *out_id = idx ? ns->impl.at(*idx).id.c_str() : nullptr;
    });
}

void dw_nodeset_free(dw_nodeset* ns) { delete ns; }

/* ---- graphs ---- */

dw_status dw_graph_load_json(const char* path, dw_graph** out) {
    if (!path || !out) return invalid_arg("path and out must be non-null");
    return guarded([&] { *out = new dw_graph{dualweb::WeightedGraph::load_json(path)}; });
}

dw_status dw_graph_save_json(const dw_graph* g, const char* path) {
    if (!g || !path) return invalid_arg("g and path must be non-null");
    return guarded([&] { g->impl.save_json(path); });
}

dw_status dw_graph_save_edge_csv(const dw_graph* g, const char* path) {
    if (!g || !path) return invalid_arg("g and path must be non-null");
    return guarded([&] { g->impl.save_edge_csv(path); });
}

dw_status dw_graph_node_count(const dw_graph* g, size_t* out) {
    if (!g || !out) return invalid_arg("g and out must be non-null");
    *out = g->impl.size();
    g_last_error.clear();
    return DW_OK;
}

dw_status dw_graph_node_id(const dw_graph* g, size_t index, const char** out) {
    if (!g || !out) return invalid_arg("g and out must be non-null");
    return guarded([&] {
        if (index >= g->impl.size()) dualweb::throw_invalid("node index out of range");
        *out = g->impl.node_id(index).c_str();
    });
}

dw_status dw_graph_weight(const dw_graph* g, size_t i, size_t j, double* out) {
    if (!g || !out) return invalid_arg("g and out must be non-null");
    return guarded([&] {
        if (i >= g->impl.size() || j >= g->impl.size()) {
            dualweb::throw_invalid("node index out of range");
        }
        *out = g->impl.weight(i, j);
    });
}

dw_status dw_graph_tie_count(const dw_graph* g, size_t* out) {
    if (!g || !out) return invalid_arg("g and out must be non-null");
    *out = g->impl.tie_count();
    g_last_error.clear();
    return DW_OK;
}

dw_status dw_graph_dichotomize(const dw_graph* g, dw_graph** out) {
    if (!g || !out) return invalid_arg("g and out must be non-null");
    return guarded([&] { *out = new dw_graph{dualweb::dichotomize(g->impl)}; });
}

dw_status dw_graph_align_common(const dw_graph* a, const dw_graph* b, dw_graph** out_a,
                                dw_graph** out_b) {
    if (!a || !b || !out_a || !out_b) return invalid_arg("all arguments must be non-null");
    return guarded([&] {
        auto [ra, rb] = dualweb::align_common(a->impl, b->impl);
        *out_a = new dw_graph{std::move(ra)};
        *out_b = new dw_graph{std::move(rb)};
    });
}

void dw_graph_free(dw_graph* g) { delete g; }

/* ---- builders ---- */

dw_status dw_build_audience(const char* metadata_csv, const char* log_csv, const char* panel_json,
                            double min_margin, const char* out_graph_json) {
    if (!metadata_csv || !log_csv || !panel_json || !out_graph_json) {
        return invalid_arg("all paths must be non-null");
    }
    return guarded([&] {
        const dualweb::NodeSet nodes = dualweb::NodeSet::load_csv(metadata_csv);
        const dualweb::Panel panel = dualweb::Panel::load_json(panel_json);
        const dualweb::VisitationLog log = dualweb::VisitationLog::load_csv(log_csv, nodes);
        const dualweb::DuplicationMatrix dup = dualweb::duplication_matrix(log, panel);
        dualweb::build_audience_graph(dup, min_margin).save_json(out_graph_json);
    });
}

dw_status dw_build_hyperlink(const char* metadata_csv, const char* edges_csv,
                             dw_symmetrize_rule rule, const char* out_graph_json,
                             const char* ingest_report_json) {
    if (!metadata_csv || !edges_csv || !out_graph_json) {
        return invalid_arg("metadata_csv, edges_csv and out_graph_json must be non-null");
    }
    return guarded([&] {
        const dualweb::NodeSet nodes = dualweb::NodeSet::load_csv(metadata_csv);
        dualweb::IngestReport report;
        const dualweb::DirectedCountGraph directed =
            dualweb::ingest_edge_list(edges_csv, nodes, &report);
        dualweb::build_hyperlink_graph(directed, to_core(rule)).save_json(out_graph_json);
        if (ingest_report_json) {
            dualweb::write_text_file(ingest_report_json, report.to_json_string());
        }
    });
}

dw_status dw_crawl(const char* config_json, const char* out_edges_csv,
                   const char* out_report_json) {
    if (!config_json || !out_edges_csv || !out_report_json) {
        return invalid_arg("config_json, out_edges_csv and out_report_json must be non-null");
    }
    return guarded([&] {
        const dualweb::CrawlConfig config = dualweb::CrawlConfig::from_json_string(config_json);
        const dualweb::CrawlReport report = dualweb::crawl(config);
        report.resolved_edges.save_edge_csv(out_edges_csv);
        dualweb::write_text_file(out_report_json, report.to_json_string());
    });
}

/* ---- metrics ---- */

dw_status dw_metrics(const dw_graph* g, dw_clustering cvar, dw_centralization zvar,
                     char** out_stats_json) {
    if (!g || !out_stats_json) return invalid_arg("g and out_stats_json must be non-null");
    return guarded([&] {
        const dualweb::NetworkStats stats =
            dualweb::network_stats(g->impl, to_core(cvar), to_core(zvar));
        *out_stats_json = copy_string(stats.to_json_string());
    });
}

dw_status dw_metrics_to_files(const dw_graph* g, dw_clustering cvar, dw_centralization zvar,
                              const char* out_stats_json, const char* out_ccdf_csv,
                              const char* out_plot_svg) {
    if (!g || !out_stats_json) return invalid_arg("g and out_stats_json must be non-null");
    return guarded([&] {
        const dualweb::NetworkStats stats =
            dualweb::network_stats(g->impl, to_core(cvar), to_core(zvar));
        dualweb::write_text_file(out_stats_json, stats.to_json_string());
        if (out_ccdf_csv) dualweb::save_ccdf_csv(dualweb::degree_ccdf(g->impl), out_ccdf_csv);
        if (out_plot_svg) dualweb::save_degree_ccdf_svg(dualweb::degree_ccdf(g->impl), out_plot_svg);
    });
}

/* ---- communities ---- */

dw_status dw_communities(const dw_graph* g, uint64_t seed, double resolution, int restarts,
                         dw_partition** out) {
    if (!g || !out) return invalid_arg("g and out must be non-null");
    return guarded([&] {
        *out = new dw_partition{dualweb::detect_communities(g->impl, seed, resolution, restarts)};
    });
}

dw_status dw_partition_load_json(const char* path, dw_partition** out) {
    if (!path || !out) return invalid_arg("path and out must be non-null");
    return guarded([&] { *out = new dw_partition{dualweb::CommunityPartition::load_json(path)}; });
}

dw_status dw_partition_save_json(const dw_partition* p, const char* path) {
    if (!p || !path) return invalid_arg("p and path must be non-null");
    return guarded([&] { p->impl.save_json(path); });
}

dw_status dw_partition_q(const dw_partition* p, double* out) {
    if (!p || !out) return invalid_arg("p and out must be non-null");
    *out = p->impl.modularity_q;
    g_last_error.clear();
    return DW_OK;
}

dw_status dw_partition_community_count(const dw_partition* p, size_t* out) {
    if (!p || !out) return invalid_arg("p and out must be non-null");
    *out = static_cast<size_t>(p->impl.n_communities);
    g_last_error.clear();
    return DW_OK;
}

dw_status dw_partition_community_of(const dw_partition* p, const char* node_id, int* out) {
    if (!p || !node_id || !out) return invalid_arg("p, node_id and out must be non-null");
    return guarded([&] { *out = p->impl.community_of(node_id); });
}

void dw_partition_free(dw_partition* p) { delete p; }

dw_status dw_cluster_purity(const dw_partition* p, const dw_nodeset* ns, dw_purity_attribute attr,
                            char** out_json) {
    if (!p || !ns || !out_json) return invalid_arg("p, ns and out_json must be non-null");
    return guarded([&] {
        const auto attribute = attr == DW_PURITY_GEOGRAPHY ? dualweb::PurityAttribute::Geography
                                                           : dualweb::PurityAttribute::Language;
        *out_json = copy_string(dualweb::cluster_purity(p->impl, ns->impl, attribute).to_json_string());
    });
}

/* ---- QAP ---- */

dw_status dw_qap(const dw_graph* a, const dw_graph* b, int n_permutations, uint64_t seed,
                 dw_qap_tail tail, dw_qap_transform transform, char** out_json) {
    if (!a || !b || !out_json) return invalid_arg("a, b and out_json must be non-null");
    if (n_permutations < 1) return invalid_arg("n_permutations must be >= 1");
    return guarded([&] {
        dualweb::WeightedGraph ga = a->impl;
        dualweb::WeightedGraph gb = b->impl;
        if (ga.node_ids() != gb.node_ids()) {
            auto [ra, rb] = dualweb::align_common(ga, gb);
            ga = std::move(ra);
            gb = std::move(rb);
        }
        ga = dualweb::transform_weights(ga, to_core(transform));
        gb = dualweb::transform_weights(gb, to_core(transform));
        const dualweb::QapResult result = dualweb::qap_correlation(
            ga, gb, static_cast<std::size_t>(n_permutations), seed, to_core(tail));
        *out_json = copy_string(result.to_json_string());
    });
}

/* ---- layout + rendering ---- */

dw_status dw_layout_compute(const dw_graph* g, int iterations, uint64_t seed, double width,
                            double height, dw_layout** out) {
    if (!g || !out) return invalid_arg("g and out must be non-null");
    return guarded([&] {
        *out = new dw_layout{dualweb::fr_layout(g->impl, iterations, seed, width, height)};
    });
}

dw_status dw_layout_load_json(const char* path, dw_layout** out) {
    if (!path || !out) return invalid_arg("path and out must be non-null");
    return guarded([&] { *out = new dw_layout{dualweb::LayoutResult::load_json(path)}; });
}

dw_status dw_layout_save_json(const dw_layout* l, const char* path) {
    if (!l || !path) return invalid_arg("l and path must be non-null");
    return guarded([&] { l->impl.save_json(path); });
}

dw_status dw_layout_position(const dw_layout* l, const char* node_id, double* out_x,
                             double* out_y) {
    if (!l || !node_id || !out_x || !out_y) {
        return invalid_arg("l, node_id, out_x and out_y must be non-null");
    }
    return guarded([&] {
        const auto p = l->impl.position_of(node_id);
        *out_x = p[0];
        *out_y = p[1];
    });
}

void dw_layout_free(dw_layout* l) { delete l; }

dw_status dw_render_svg(const dw_graph* g, const dw_layout* l, const dw_partition* p,
                        const dw_nodeset* ns, double edge_quantile, const char* out_svg) {
    if (!g || !l || !p || !ns || !out_svg) return invalid_arg("all arguments must be non-null");
    return guarded([&] {
        dualweb::save_network_svg(g->impl, l->impl, p->impl, ns->impl, out_svg, edge_quantile);
    });
}

/* ---- synthetic + pipeline ---- */

dw_status dw_synth(const char* config_json, const char* out_dir) {
    if (!config_json || !out_dir) return invalid_arg("config_json and out_dir must be non-null");
    return guarded([&] {
        dualweb::write_synth_dataset(dualweb::SynthConfig::from_json_string(config_json), out_dir);
    });
}

dw_status dw_reproduce(const char* config_json, const char* out_dir, char** out_report_json) {
    if (!config_json || !out_dir) return invalid_arg("config_json and out_dir must be non-null");
    return guarded([&] {
        const nlohmann::json report = dualweb::reproduce(config_json, out_dir);
        if (out_report_json) *out_report_json = copy_string(report.dump(2) + "\n");
    });
}

} // extern "C"
