#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "core/nodeset.hpp"

namespace dualweb {

// Undirected graph over an ordered node-id list: symmetric nonnegative dense
// weight matrix, zero diagonal. Immutable after construction, so instances
// can be read from any number of threads.
class WeightedGraph {
public:
    WeightedGraph(std::vector<std::string> node_ids, std::vector<double> weights);
    static WeightedGraph zeros(std::vector<std::string> node_ids);

    std::size_t size() const { return ids_.size(); }
    const std::vector<std::string>& node_ids() const { return ids_; }
    const std::string& node_id(std::size_t i) const { return ids_[i]; }

    double weight(std::size_t i, std::size_t j) const { return weights_[i * ids_.size() + j]; }
    const std::vector<double>& weights() const { return weights_; }
    bool has_tie(std::size_t i, std::size_t j) const { return weight(i, j) > 0.0; }

    std::size_t tie_count() const;
    double total_weight() const; // sum over unordered pairs
    bool is_binary() const;
    double max_weight() const;

    // JSON form {"nodes":[ids...],"weights":[[...]]}
    static WeightedGraph load_json(const std::string& path, std::size_t node_cap = kDefaultNodeCap);
    void save_json(const std::string& path) const;
    std::string to_json_string() const;

    // One row per undirected tie, `src,dst,weight`, src < dst by id order.
    void save_edge_csv(const std::string& path) const;

private:
    std::vector<std::string> ids_;
    std::vector<double> weights_;
};

// Directed link-count matrix over the same kind of node list; zero diagonal.
// Built incrementally by a single writer, then treated as read-only.
class DirectedCountGraph {
public:
    explicit DirectedCountGraph(std::vector<std::string> node_ids);

    std::size_t size() const { return ids_.size(); }
    const std::vector<std::string>& node_ids() const { return ids_; }

    std::uint64_t count(std::size_t i, std::size_t j) const { return counts_[i * ids_.size() + j]; }
    void add_count(std::size_t i, std::size_t j, std::uint64_t c);

    std::uint64_t total_count() const;
    std::size_t directed_edge_count() const; // pairs with count > 0

    void save_edge_csv(const std::string& path) const;

private:
    std::vector<std::string> ids_;
    std::vector<std::uint64_t> counts_;
};

enum class SymmetrizeRule { Sum, Max, Or };

SymmetrizeRule symmetrize_rule_from_string(const std::string& name);
std::string to_string(SymmetrizeRule rule);

// Directed counts -> undirected weights. Sum is the default rule:
// weight(i,j) = counts(i,j) + counts(j,i). The dichotomized view is the same
// under every rule.
WeightedGraph symmetrize(const DirectedCountGraph& g, SymmetrizeRule rule = SymmetrizeRule::Sum);

// weight > 0 becomes 1, everything else stays 0.
WeightedGraph dichotomize(const WeightedGraph& g);

// Restrict both graphs to the intersection of their node-id sets, in a's
// node order. Fails when the intersection is empty.
std::pair<WeightedGraph, WeightedGraph> align_common(const WeightedGraph& a, const WeightedGraph& b);

} // namespace dualweb
