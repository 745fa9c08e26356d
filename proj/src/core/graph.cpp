#include "core/graph.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "core/error.hpp"
#include "core/fileio.hpp"

namespace dualweb {

namespace {

void check_ids(const std::vector<std::string>& ids) {
    std::unordered_set<std::string> seen;
    for (const auto& id : ids) {
        if (id.empty()) throw_invalid("graph contains an empty node id");
        if (!seen.insert(id).second) throw_invalid("duplicate node id in graph: " + id);
    }
}

} // namespace

WeightedGraph::WeightedGraph(std::vector<std::string> node_ids, std::vector<double> weights)
    : ids_(std::move(node_ids)), weights_(std::move(weights)) {
    const std::size_t n = ids_.size();
    check_ids(ids_);
    if (weights_.size() != n * n) {
        throw_invalid("weight matrix size " + std::to_string(weights_.size()) +
                      " does not match " + std::to_string(n) + " nodes");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (weights_[i * n + i] != 0.0) throw_invalid("nonzero diagonal at node " + ids_[i]);
        for (std::size_t j = 0; j < n; ++j) {
            const double w = weights_[i * n + j];
            if (!std::isfinite(w) || w < 0.0) {
                throw_invalid("weight(" + ids_[i] + "," + ids_[j] + ") is negative or not finite");
            }
            if (w != weights_[j * n + i]) {
                throw_invalid("weight matrix not symmetric at (" + ids_[i] + "," + ids_[j] + ")");
            }
        }
    }
}

WeightedGraph WeightedGraph::zeros(std::vector<std::string> node_ids) {
    const std::size_t n = node_ids.size();
    return WeightedGraph(std::move(node_ids), std::vector<double>(n * n, 0.0));
}

std::size_t WeightedGraph::tie_count() const {
    const std::size_t n = size();
    std::size_t ties = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (weights_[i * n + j] > 0.0) ++ties;
    return ties;
}

double WeightedGraph::total_weight() const {
    const std::size_t n = size();
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) total += weights_[i * n + j];
    return total;
}

bool WeightedGraph::is_binary() const {
    return std::all_of(weights_.begin(), weights_.end(),
                       [](double w) { return w == 0.0 || w == 1.0; });
}

double WeightedGraph::max_weight() const {
    double m = 0.0;
    for (double w : weights_) m = std::max(m, w);
    return m;
}

WeightedGraph WeightedGraph::load_json(const std::string& path, std::size_t node_cap) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_text_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw_parse(path + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("nodes") || !j.contains("weights")) {
        throw_parse(path + ": expected an object with 'nodes' and 'weights'");
    }
    std::vector<std::string> ids;
    for (const auto& v : j.at("nodes")) {
        if (!v.is_string()) throw_parse(path + ": node ids must be strings");
        ids.push_back(v.get<std::string>());
    }
    if (ids.size() > node_cap) {
        throw_invalid(path + ": " + std::to_string(ids.size()) + " nodes exceeds the cap of " +
                      std::to_string(node_cap));
    }
    const std::size_t n = ids.size();
    std::vector<double> weights;
    weights.reserve(n * n);
    const auto& rows = j.at("weights");
    if (!rows.is_array() || rows.size() != n) throw_parse(path + ": weights must be an n x n array");
    for (const auto& row : rows) {
        if (!row.is_array() || row.size() != n) throw_parse(path + ": weights must be an n x n array");
        for (const auto& v : row) {
            if (!v.is_number()) throw_parse(path + ": weights must be numbers");
            weights.push_back(v.get<double>());
        }
    }
    try {
        return WeightedGraph(std::move(ids), std::move(weights));
    } catch (const Error& e) {
        throw_parse(path + ": " + e.what());
    }
}

std::string WeightedGraph::to_json_string() const {
    nlohmann::json j;
    j["nodes"] = ids_;
    const std::size_t n = size();
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < n; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t k = 0; k < n; ++k) row.push_back(weights_[i * n + k]);
        rows.push_back(std::move(row));
    }
    j["weights"] = std::move(rows);
    return j.dump(2) + "\n";
}

void WeightedGraph::save_json(const std::string& path) const {
    write_text_file(path, to_json_string());
}

void WeightedGraph::save_edge_csv(const std::string& path) const {
    const std::size_t n = size();
    std::vector<std::pair<std::string, std::string>> keys;
    std::vector<double> values;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double w = weights_[i * n + j];
            if (w <= 0.0) continue;
            if (ids_[i] < ids_[j]) keys.emplace_back(ids_[i], ids_[j]);
            else keys.emplace_back(ids_[j], ids_[i]);
            values.push_back(w);
        }
    }
    std::vector<std::size_t> order(keys.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
    std::string out = "src,dst,weight\n";
    nlohmann::json num; // reuse the shortest-round-trip double formatting
    for (std::size_t k : order) {
        num = values[k];
        out += keys[k].first + "," + keys[k].second + "," + num.dump() + "\n";
    }
    write_text_file(path, out);
}

DirectedCountGraph::DirectedCountGraph(std::vector<std::string> node_ids)
    : ids_(std::move(node_ids)), counts_(ids_.size() * ids_.size(), 0) {
    check_ids(ids_);
}

void DirectedCountGraph::add_count(std::size_t i, std::size_t j, std::uint64_t c) {
    if (i >= size() || j >= size()) throw_invalid("edge endpoint out of range");
    if (i == j) throw_invalid("self-links are not representable; drop them upstream");
    counts_[i * size() + j] += c;
}

std::uint64_t DirectedCountGraph::total_count() const {
    std::uint64_t total = 0;
    for (auto c : counts_) total += c;
    return total;
}

std::size_t DirectedCountGraph::directed_edge_count() const {
    std::size_t edges = 0;
    for (auto c : counts_) edges += c > 0 ? 1 : 0;
    return edges;
}

void DirectedCountGraph::save_edge_csv(const std::string& path) const {
    const std::size_t n = size();
    std::string out = "src,dst,count\n";
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (counts_[i * n + j] > 0) {
                out += ids_[i] + "," + ids_[j] + "," + std::to_string(counts_[i * n + j]) + "\n";
            }
        }
    }
    write_text_file(path, out);
}

SymmetrizeRule symmetrize_rule_from_string(const std::string& name) {
    if (name == "sum") return SymmetrizeRule::Sum;
    if (name == "max") return SymmetrizeRule::Max;
    if (name == "or") return SymmetrizeRule::Or;
    throw_invalid("unknown symmetrize rule '" + name + "' (expected sum, max or or)");
}

std::string to_string(SymmetrizeRule rule) {
    switch (rule) {
        case SymmetrizeRule::Sum: return "sum";
        case SymmetrizeRule::Max: return "max";
        case SymmetrizeRule::Or: return "or";
    }
    return "sum";
}

WeightedGraph symmetrize(const DirectedCountGraph& g, SymmetrizeRule rule) {
    const std::size_t n = g.size();
    std::vector<double> weights(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const std::uint64_t forward = g.count(i, j);
            const std::uint64_t backward = g.count(j, i);
            double w = 0.0;
            switch (rule) {
                case SymmetrizeRule::Sum: w = static_cast<double>(forward + backward); break;
                case SymmetrizeRule::Max: w = static_cast<double>(std::max(forward, backward)); break;
                case SymmetrizeRule::Or: w = (forward + backward) > 0 ? 1.0 : 0.0; break;
            }
            weights[i * n + j] = weights[j * n + i] = w;
        }
    }
    return WeightedGraph(g.node_ids(), std::move(weights));
}

WeightedGraph dichotomize(const WeightedGraph& g) {
    const std::size_t n = g.size();
    std::vector<double> weights(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            weights[i * n + j] = g.weight(i, j) > 0.0 ? 1.0 : 0.0;
    return WeightedGraph(g.node_ids(), std::move(weights));
}

std::pair<WeightedGraph, WeightedGraph> align_common(const WeightedGraph& a, const WeightedGraph& b) {
    if (a.size() == 0 || b.size() == 0) throw_invalid("align_common requires nonempty graphs");
    std::unordered_map<std::string, std::size_t> b_index;
    for (std::size_t j = 0; j < b.size(); ++j) b_index.emplace(b.node_id(j), j);

    std::vector<std::string> common_ids;
    std::vector<std::size_t> a_idx, b_idx;
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto it = b_index.find(a.node_id(i));
        if (it == b_index.end()) continue;
        common_ids.push_back(a.node_id(i));
        a_idx.push_back(i);
        b_idx.push_back(it->second);
    }
    if (common_ids.empty()) throw_invalid("align_common: the node-id intersection is empty");

    const std::size_t m = common_ids.size();
    std::vector<double> wa(m * m, 0.0), wb(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            wa[i * m + j] = a.weight(a_idx[i], a_idx[j]);
            wb[i * m + j] = b.weight(b_idx[i], b_idx[j]);
        }
    }
    return {WeightedGraph(common_ids, std::move(wa)), WeightedGraph(common_ids, std::move(wb))};
}

} // namespace dualweb
