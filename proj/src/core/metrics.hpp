#pragma once

#include <map>
#include <string>
#include <vector>

#include "core/graph.hpp"

namespace dualweb {

// Descriptive statistics over the dichotomized view of a graph: a tie is any
// strictly positive weight, so callers may pass either the dichotomized graph
// or the valued one.

enum class ClusteringVariant { AverageLocal, Transitivity };
enum class CentralizationVariant { Freeman, Hhi };

ClusteringVariant clustering_variant_from_string(const std::string& name);
CentralizationVariant centralization_variant_from_string(const std::string& name);

struct NetworkStats {
    std::size_t n_nodes = 0;
    std::size_t n_ties = 0;
    double density = 0.0;
    double clustering_coefficient = 0.0;
    double centralization = 0.0;     // the selected variant
    double centralization_hhi = 0.0; // always reported alongside, never substituted
    std::map<std::size_t, std::size_t> degree_histogram;
    ClusteringVariant clustering_variant = ClusteringVariant::AverageLocal;
    CentralizationVariant centralization_variant = CentralizationVariant::Freeman;

    std::string to_json_string() const;
};

// ties / (n(n-1)/2); requires n >= 2
double density(const WeightedGraph& g);

std::size_t degree(const WeightedGraph& g, const std::string& node_id);
std::vector<std::size_t> degrees(const WeightedGraph& g);
std::map<std::size_t, std::size_t> degree_distribution(const WeightedGraph& g);

struct CcdfRow {
    std::size_t degree; // a degree value present in the graph
    std::size_t count;  // nodes with exactly this degree
    double ccdf;        // fraction of nodes with degree >= this value
};
std::vector<CcdfRow> degree_ccdf(const WeightedGraph& g);
void save_ccdf_csv(const std::vector<CcdfRow>& rows, const std::string& path);

// Average local (Watts-Strogatz) clustering by default; nodes of degree < 2
// contribute 0. Transitivity = 3*triangles / connected triples. Requires n >= 3.
double clustering_coefficient(const WeightedGraph& g,
                              ClusteringVariant variant = ClusteringVariant::AverageLocal);

// Freeman degree centralization by default; the HHI variant is
// sum((d_i / sum d)^2). Requires n >= 3.
double centralization(const WeightedGraph& g,
                      CentralizationVariant variant = CentralizationVariant::Freeman);

NetworkStats network_stats(const WeightedGraph& g,
                           ClusteringVariant cvar = ClusteringVariant::AverageLocal,
                           CentralizationVariant zvar = CentralizationVariant::Freeman);

} // namespace dualweb
