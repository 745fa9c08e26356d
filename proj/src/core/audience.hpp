#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/graph.hpp"
#include "core/nodeset.hpp"

namespace dualweb {

struct Panel {
    std::uint64_t universe_size = 0; // projection universe, each panelist weight 1
    std::string window;

    static Panel load_json(const std::string& path);
    void save_json(const std::string& path) const;
};

// Deduplicated (user, site) visitation pairs over one window, indexed against
// a node set. Stored as per-site visitor bitsets over a dense user index.
class VisitationLog {
public:
    VisitationLog(const NodeSet& nodes,
                  const std::vector<std::pair<std::string, std::string>>& user_site_pairs);

    // CSV columns: user_id,site_id (one row per visit event; repeats collapse)
    static VisitationLog load_csv(const std::string& path, const NodeSet& nodes);
    void save_csv(const std::string& path) const;

    std::size_t site_count() const { return site_ids_.size(); }
    const std::vector<std::string>& site_ids() const { return site_ids_; }
    std::size_t user_count() const { return user_ids_.size(); }

    std::uint64_t visitors_of(std::size_t site) const { return visitor_counts_[site]; }
    std::uint64_t shared_visitors(std::size_t site_a, std::size_t site_b) const;

private:
    std::vector<std::string> site_ids_;
    std::vector<std::string> user_ids_; // dense index -> original id
    std::size_t blocks_per_site_ = 0;
    std::vector<std::uint64_t> bits_;          // site-major visitor bitsets
    std::vector<std::uint64_t> visitor_counts_;
};

// Symmetric shared-audience fractions; diagonal holds per-site reach.
// Invariants checked on construction: symmetry, range, pair duplication
// bounded by both reaches and from below by the Frechet bound.
class DuplicationMatrix {
public:
    DuplicationMatrix(std::vector<std::string> node_ids, std::vector<double> d);

    std::size_t size() const { return ids_.size(); }
    const std::vector<std::string>& node_ids() const { return ids_; }
    double at(std::size_t i, std::size_t j) const { return d_[i * ids_.size() + j]; }
    double reach(std::size_t i) const { return at(i, i); }
    std::size_t pair_count() const { return ids_.size() * (ids_.size() - 1) / 2; }

private:
    std::vector<std::string> ids_;
    std::vector<double> d_;
};

// reach[i] = unique visitors of site i / universe size.
std::vector<double> compute_reach(const VisitationLog& log, const Panel& panel);

// d[i][j] = users visiting both i and j / universe size; diagonal = reach.
// Pair space is partitioned across workers; the result does not depend on
// the worker count.
DuplicationMatrix duplication_matrix(const VisitationLog& log, const Panel& panel,
                                     unsigned n_threads = 0);

// Independence baseline for a pair of reach fractions.
double expected_duplication(double reach_i, double reach_j);

// Tie rule: weight = observed - expected where observed > expected + min_margin
// (strictly), else no tie. Weights are the above-expected duplication.
WeightedGraph build_audience_graph(const DuplicationMatrix& dup, double min_margin = 0.0);

} // namespace dualweb
