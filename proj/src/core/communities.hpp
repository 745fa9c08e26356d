#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/graph.hpp"
#include "core/nodeset.hpp"

namespace dualweb {

struct CommunityPartition {
    std::vector<std::string> node_ids;
    std::vector<int> assignment; // dense community ids, 0-based
    double modularity_q = 0.0;   // at resolution 1
    std::uint64_t seed = 0;
    int n_communities = 0;

    int community_of(const std::string& node_id) const;

    static CommunityPartition load_json(const std::string& path);
    void save_json(const std::string& path) const;
    std::string to_json_string() const;
};

// Newman weighted modularity Q = (1/2m) sum_ij [w_ij - g*k_i*k_j/2m] delta(c_i,c_j).
// Requires an assignment covering all nodes and total weight m > 0.
double modularity(const WeightedGraph& g, const std::vector<int>& assignment,
                  double resolution = 1.0);

// Louvain greedy modularity maximization on the tie weights. Deterministic
// given (seed, restarts): restart r scans nodes in an independently seeded
// shuffled order; the best Q wins, ties broken by fewer communities then by
// restart index. The trivial one-community and all-singleton partitions are
// always candidates, so the returned Q is never below either. Restarts run
// in parallel. A graph with a single node or zero total weight yields the
// singleton partition with Q defined as 0.
CommunityPartition detect_communities(const WeightedGraph& g, std::uint64_t seed,
                                      double resolution = 1.0, int restarts = 5);

enum class PurityAttribute { Geography, Language };

struct ClusterPurity {
    int community = 0;
    std::size_t size = 0;    // members in the cluster
    std::size_t counted = 0; // members entering the denominator
    std::string modal_value; // empty when undefined
    std::optional<double> purity;
};

struct PurityResult {
    std::vector<ClusterPurity> clusters;     // by community id
    std::optional<double> weighted_mean;     // weighted by counted members
    std::size_t undefined_clusters = 0;      // flagged: no usable attribute values

    std::string to_json_string() const;
};

// Fraction of cluster members sharing the modal attribute value. For
// geography, GLOBAL nodes are excluded from the denominator; for language,
// nodes without language metadata are excluded and a node counts toward every
// language it offers.
PurityResult cluster_purity(const CommunityPartition& partition, const NodeSet& nodes,
                            PurityAttribute attribute);

// Adjusted Rand index between two labelings of the same elements; 1 for
// identical partitions, about 0 for independent ones.
double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b);

} // namespace dualweb
