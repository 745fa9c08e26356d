#include "core/metrics.hpp"

#include <algorithm>

#include <json.hpp>

#include "core/error.hpp"
#include "core/fileio.hpp"
#include "core/parallel.hpp"

namespace dualweb {

ClusteringVariant clustering_variant_from_string(const std::string& name) {
    if (name == "avg-local") return ClusteringVariant::AverageLocal;
    if (name == "transitivity") return ClusteringVariant::Transitivity;
    throw_invalid("unknown clustering variant '" + name + "' (expected avg-local or transitivity)");
}

CentralizationVariant centralization_variant_from_string(const std::string& name) {
    if (name == "freeman") return CentralizationVariant::Freeman;
    if (name == "hhi") return CentralizationVariant::Hhi;
    throw_invalid("unknown centralization variant '" + name + "' (expected freeman or hhi)");
}

std::string NetworkStats::to_json_string() const {
    nlohmann::json j;
    j["n_nodes"] = n_nodes;
    j["n_ties"] = n_ties;
    j["density"] = density;
    j["clustering_coefficient"] = clustering_coefficient;
    j["clustering_variant"] =
        clustering_variant == ClusteringVariant::AverageLocal ? "avg-local" : "transitivity";
    j["centralization"] = centralization;
    j["centralization_variant"] =
        centralization_variant == CentralizationVariant::Freeman ? "freeman" : "hhi";
    j["centralization_hhi"] = centralization_hhi;
    nlohmann::json hist = nlohmann::json::object();
    for (const auto& [deg, count] : degree_histogram) hist[std::to_string(deg)] = count;
    j["degree_histogram"] = std::move(hist);
    return j.dump(2) + "\n";
}

double density(const WeightedGraph& g) {
    const std::size_t n = g.size();
    if (n < 2) throw_invalid("density requires at least 2 nodes");
    return static_cast<double>(g.tie_count()) / (static_cast<double>(n) * (n - 1) / 2.0);
}

std::vector<std::size_t> degrees(const WeightedGraph& g) {
    const std::size_t n = g.size();
    std::vector<std::size_t> deg(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (j != i && g.weight(i, j) > 0.0) ++deg[i];
    return deg;
}

std::size_t degree(const WeightedGraph& g, const std::string& node_id) {
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g.node_id(i) == node_id) {
            std::size_t d = 0;
            for (std::size_t j = 0; j < g.size(); ++j)
                if (j != i && g.weight(i, j) > 0.0) ++d;
            return d;
        }
    }
    throw_invalid("unknown node: " + node_id);
}

std::map<std::size_t, std::size_t> degree_distribution(const WeightedGraph& g) {
    std::map<std::size_t, std::size_t> hist;
    for (std::size_t d : degrees(g)) ++hist[d];
    return hist;
}

std::vector<CcdfRow> degree_ccdf(const WeightedGraph& g) {
    const auto hist = degree_distribution(g);
    const double n = static_cast<double>(g.size());
    std::vector<CcdfRow> rows;
    std::size_t at_or_above = g.size();
    for (const auto& [deg, count] : hist) { // ascending degree
        rows.push_back({deg, count, static_cast<double>(at_or_above) / n});
        at_or_above -= count;
    }
    return rows;
}

void save_ccdf_csv(const std::vector<CcdfRow>& rows, const std::string& path) {
    std::string out = "degree,count,ccdf\n";
    nlohmann::json num;
    for (const auto& row : rows) {
        num = row.ccdf;
        out += std::to_string(row.degree) + "," + std::to_string(row.count) + "," + num.dump() + "\n";
    }
    write_text_file(path, out);
}

namespace {

// adjacency lists of the dichotomized view, neighbor indices ascending
std::vector<std::vector<std::size_t>> adjacency(const WeightedGraph& g) {
    const std::size_t n = g.size();
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (j != i && g.weight(i, j) > 0.0) adj[i].push_back(j);
    return adj;
}

} // namespace

double clustering_coefficient(const WeightedGraph& g, ClusteringVariant variant) {
    const std::size_t n = g.size();
    if (n < 3) throw_invalid("clustering coefficient requires at least 3 nodes");
    const auto adj = adjacency(g);

    // per-node closed neighbor-pair counts, filled by node partition;
    // the reduction below runs in node order so the sum is deterministic
    std::vector<std::size_t> links_at(n, 0);
    parallel_for(n, 0, [&](std::size_t begin, std::size_t end) {
        for (std::size_t v = begin; v < end; ++v) {
            const auto& nb = adj[v];
            std::size_t links = 0;
            for (std::size_t a = 0; a < nb.size(); ++a)
                for (std::size_t b = a + 1; b < nb.size(); ++b)
                    if (g.weight(nb[a], nb[b]) > 0.0) ++links;
            links_at[v] = links;
        }
    });

    double local_sum = 0.0;
    double closed_triples = 0.0;
    double triples = 0.0; // deg*(deg-1)/2, summed
    for (std::size_t v = 0; v < n; ++v) {
        const std::size_t deg = adj[v].size();
        if (deg < 2) continue; // degree < 2 contributes 0
        const double possible = static_cast<double>(deg) * (deg - 1) / 2.0;
        local_sum += static_cast<double>(links_at[v]) / possible;
        closed_triples += static_cast<double>(links_at[v]);
        triples += possible;
    }
    if (variant == ClusteringVariant::AverageLocal) {
        return local_sum / static_cast<double>(n);
    }
    return triples > 0.0 ? closed_triples / triples : 0.0;
}

double centralization(const WeightedGraph& g, CentralizationVariant variant) {
    const std::size_t n = g.size();
    if (n < 3) throw_invalid("centralization requires at least 3 nodes");
    const auto deg = degrees(g);
    if (variant == CentralizationVariant::Freeman) {
        const std::size_t d_max = *std::max_element(deg.begin(), deg.end());
        double gap_sum = 0.0;
        for (std::size_t d : deg) gap_sum += static_cast<double>(d_max - d);
        return gap_sum / (static_cast<double>(n - 1) * static_cast<double>(n - 2));
    }
    // HHI over degree shares; an edgeless graph has no shares, scored 0
    double total = 0.0;
    for (std::size_t d : deg) total += static_cast<double>(d);
    if (total == 0.0) return 0.0;
    double hhi = 0.0;
    for (std::size_t d : deg) {
        const double share = static_cast<double>(d) / total;
        hhi += share * share;
    }
    return hhi;
}

NetworkStats network_stats(const WeightedGraph& g, ClusteringVariant cvar,
                           CentralizationVariant zvar) {
    NetworkStats stats;
    stats.n_nodes = g.size();
    stats.n_ties = g.tie_count();
    stats.density = density(g);
    stats.clustering_coefficient = clustering_coefficient(g, cvar);
    stats.centralization = centralization(g, zvar);
    stats.centralization_hhi = centralization(g, CentralizationVariant::Hhi);
    stats.degree_histogram = degree_distribution(g);
    stats.clustering_variant = cvar;
    stats.centralization_variant = zvar;
    return stats;
}

} // namespace dualweb
