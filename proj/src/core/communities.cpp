#include "core/communities.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <thread>
#include <unordered_map>

#include <json.hpp>

#include "core/error.hpp"
#include "core/fileio.hpp"
#include "core/rng.hpp"

namespace dualweb {

int CommunityPartition::community_of(const std::string& node_id) const {
    for (std::size_t i = 0; i < node_ids.size(); ++i)
        if (node_ids[i] == node_id) return assignment[i];
    throw_invalid("unknown node: " + node_id);
}

CommunityPartition CommunityPartition::load_json(const std::string& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_text_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw_parse(path + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("assignment")) {
        throw_parse(path + ": expected an object with 'assignment'");
    }
    CommunityPartition p;
    // object keys come back sorted; keep that order, it is stable
    for (const auto& [id, cid] : j.at("assignment").items()) {
        p.node_ids.push_back(id);
        if (!cid.is_number_integer()) throw_parse(path + ": community ids must be integers");
        p.assignment.push_back(cid.get<int>());
    }
    p.modularity_q = j.value("q", 0.0);
    p.seed = j.value("seed", std::uint64_t{0});
    int max_id = -1;
    for (int c : p.assignment) {
        if (c < 0) throw_parse(path + ": community ids must be nonnegative");
        max_id = std::max(max_id, c);
    }
    p.n_communities = j.value("n_communities", max_id + 1);
    return p;
}

std::string CommunityPartition::to_json_string() const {
    nlohmann::json assignment_json = nlohmann::json::object();
    for (std::size_t i = 0; i < node_ids.size(); ++i) assignment_json[node_ids[i]] = assignment[i];
    nlohmann::json j;
    j["assignment"] = std::move(assignment_json);
    j["q"] = modularity_q;
    j["seed"] = seed;
    j["n_communities"] = n_communities;
    return j.dump(2) + "\n";
}

void CommunityPartition::save_json(const std::string& path) const {
    write_text_file(path, to_json_string());
}

double modularity(const WeightedGraph& g, const std::vector<int>& assignment, double resolution) {
    const std::size_t n = g.size();
    if (assignment.size() != n) throw_invalid("partition does not cover all nodes");
    for (int c : assignment)
        if (c < 0) throw_invalid("community ids must be nonnegative");

    const double m = g.total_weight();
    if (m <= 0.0) throw_invalid("modularity undefined for total weight 0");
    const double two_m = 2.0 * m;

    const int n_comms = 1 + *std::max_element(assignment.begin(), assignment.end());
    std::vector<double> internal(n_comms, 0.0); // sum of w_ij over ordered intra pairs
    std::vector<double> degree_sum(n_comms, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double k_i = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double w = g.weight(i, j);
            k_i += w;
            if (assignment[i] == assignment[j]) internal[assignment[i]] += w;
        }
        degree_sum[assignment[i]] += k_i;
    }
    double q = 0.0;
    for (int c = 0; c < n_comms; ++c) {
        q += internal[c] / two_m - resolution * (degree_sum[c] / two_m) * (degree_sum[c] / two_m);
    }
    return q;
}

namespace {

// One Louvain level: adjacency with self-loops carrying aggregated
// intra-community weight.
struct LevelGraph {
    std::vector<std::vector<std::pair<std::size_t, double>>> adj; // neighbor, weight (no self)
    std::vector<double> self_loop;
    std::vector<double> strength; // k_i including 2*self_loop
    double two_m = 0.0;

    std::size_t size() const { return adj.size(); }
};

LevelGraph level_from_graph(const WeightedGraph& g) {
    LevelGraph lg;
    const std::size_t n = g.size();
    lg.adj.resize(n);
    lg.self_loop.assign(n, 0.0);
    lg.strength.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double k = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double w = g.weight(i, j);
            if (w > 0.0) {
                lg.adj[i].emplace_back(j, w);
                k += w;
            }
        }
        lg.strength[i] = k;
        lg.two_m += k;
    }
    return lg;
}

// Local moving phase; returns true when at least one node moved.
bool local_move(const LevelGraph& lg, std::vector<int>& community, double resolution, Rng& rng) {
    const std::size_t n = lg.size();
    std::vector<double> community_strength(n, 0.0);
    for (std::size_t v = 0; v < n; ++v) community_strength[community[v]] += lg.strength[v];

    std::vector<double> weight_to(n, -1.0); // -1 marks "not a neighbor community"
    std::vector<int> touched;
    bool any_move = false;

    const auto order = shuffled_indices(n, rng);
    bool improved = true;
    while (improved) {
        improved = false;
        for (std::size_t v : order) {
            const int old_comm = community[v];

            touched.clear();
            weight_to[old_comm] = 0.0;
            touched.push_back(old_comm);
            for (const auto& [u, w] : lg.adj[v]) {
                const int c = community[u];
                if (weight_to[c] < 0.0) {
                    weight_to[c] = 0.0;
                    touched.push_back(c);
                }
                weight_to[c] += w;
            }

            community_strength[old_comm] -= lg.strength[v];

            // gain of joining community c, normalized by 2m so the decision,
            // including its tie epsilon, is invariant to weight rescaling:
            // w(v->c)/2m - resolution * (k_v/2m) * (strength(c)/2m)
            const double kv_norm = lg.strength[v] / lg.two_m;
            int best_comm = old_comm;
            double best_gain = weight_to[old_comm] / lg.two_m -
                               resolution * kv_norm * community_strength[old_comm] / lg.two_m;
            std::sort(touched.begin(), touched.end());
            for (int c : touched) {
                const double gain =
                    weight_to[c] / lg.two_m - resolution * kv_norm * community_strength[c] / lg.two_m;
                if (gain > best_gain + 1e-12) { // ties keep the lowest community id
                    best_gain = gain;
                    best_comm = c;
                }
            }
            community_strength[best_comm] += lg.strength[v];
            community[v] = best_comm;
            if (best_comm != old_comm) {
                improved = true;
                any_move = true;
            }
            for (int c : touched) weight_to[c] = -1.0;
        }
    }
    return any_move;
}

// Renumber communities densely, ordered by first appearance.
std::vector<int> compact_labels(const std::vector<int>& community) {
    std::unordered_map<int, int> remap;
    std::vector<int> out(community.size());
    for (std::size_t i = 0; i < community.size(); ++i) {
        auto [it, inserted] = remap.emplace(community[i], static_cast<int>(remap.size()));
        out[i] = it->second;
    }
    return out;
}

LevelGraph aggregate(const LevelGraph& lg, const std::vector<int>& community, int n_comms) {
    LevelGraph next;
    next.adj.resize(n_comms);
    next.self_loop.assign(n_comms, 0.0);
    next.strength.assign(n_comms, 0.0);
    next.two_m = lg.two_m;
    std::vector<std::map<std::size_t, double>> merged(n_comms);
    for (std::size_t v = 0; v < lg.size(); ++v) {
        const int cv = community[v];
        next.self_loop[cv] += lg.self_loop[v];
        for (const auto& [u, w] : lg.adj[v]) {
            const int cu = community[u];
            if (cu == cv) {
                next.self_loop[cv] += w / 2.0; // each intra edge visited twice
            } else {
                merged[cv][cu] += w;
            }
        }
    }
    for (int c = 0; c < n_comms; ++c) {
        double k = 2.0 * next.self_loop[c];
        for (const auto& [u, w] : merged[c]) {
            next.adj[c].emplace_back(u, w);
            k += w;
        }
        next.strength[c] = k;
    }
    return next;
}

std::vector<int> louvain_once(const WeightedGraph& g, double resolution, std::uint64_t seed) {
    LevelGraph lg = level_from_graph(g);
    Rng rng(seed);

    std::vector<int> membership(g.size());
    for (std::size_t i = 0; i < membership.size(); ++i) membership[i] = static_cast<int>(i);

    for (;;) {
        std::vector<int> community(lg.size());
        for (std::size_t i = 0; i < community.size(); ++i) community[i] = static_cast<int>(i);
        const bool moved = local_move(lg, community, resolution, rng);
        if (!moved) break;
        community = compact_labels(community);
        const int n_comms = 1 + *std::max_element(community.begin(), community.end());
        for (auto& m : membership) m = community[m];
        if (static_cast<std::size_t>(n_comms) == lg.size()) break;
        lg = aggregate(lg, community, n_comms);
    }
    return compact_labels(membership);
}

} // namespace

CommunityPartition detect_communities(const WeightedGraph& g, std::uint64_t seed,
                                      double resolution, int restarts) {
    if (g.size() == 0) throw_invalid("cannot detect communities in an empty graph");
    if (restarts < 1) throw_invalid("restarts must be >= 1");

    CommunityPartition result;
    result.node_ids = g.node_ids();
    result.seed = seed;

    // single node or edgeless graph: singleton communities, Q defined as 0
    if (g.size() == 1 || g.total_weight() <= 0.0) {
        result.assignment.resize(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) result.assignment[i] = static_cast<int>(i);
        result.modularity_q = 0.0;
        result.n_communities = static_cast<int>(g.size());
        return result;
    }

    struct Candidate {
        std::vector<int> assignment;
        double q = 0.0;
        int n_comms = 0;
    };
    std::vector<Candidate> candidates(static_cast<std::size_t>(restarts));
    std::vector<std::thread> threads;
    for (int r = 0; r < restarts; ++r) {
        threads.emplace_back([&, r] {
            Candidate c;
            c.assignment = louvain_once(g, resolution, derive_seed(seed, static_cast<std::uint64_t>(r)));
            c.q = modularity(g, c.assignment, resolution);
            c.n_comms = 1 + *std::max_element(c.assignment.begin(), c.assignment.end());
            candidates[static_cast<std::size_t>(r)] = std::move(c);
        });
    }
    for (auto& t : threads) t.join();

    // trivial partitions as floor candidates
    {
        Candidate one;
        one.assignment.assign(g.size(), 0);
        one.q = modularity(g, one.assignment, resolution);
        one.n_comms = 1;
        candidates.push_back(std::move(one));

        Candidate singles;
        singles.assignment.resize(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) singles.assignment[i] = static_cast<int>(i);
        singles.q = modularity(g, singles.assignment, resolution);
        singles.n_comms = static_cast<int>(g.size());
        candidates.push_back(std::move(singles));
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i < candidates.size(); ++i) {
        const auto& a = candidates[i];
        const auto& b = candidates[best];
        if (a.q > b.q + 1e-12 || (std::abs(a.q - b.q) <= 1e-12 && a.n_comms < b.n_comms)) best = i;
    }
    result.assignment = candidates[best].assignment;
    result.modularity_q = modularity(g, result.assignment, 1.0);
    result.n_communities = candidates[best].n_comms;
    return result;
}

PurityResult cluster_purity(const CommunityPartition& partition, const NodeSet& nodes,
                            PurityAttribute attribute) {
    const int n_comms =
        partition.assignment.empty()
            ? 0
            : 1 + *std::max_element(partition.assignment.begin(), partition.assignment.end());

    PurityResult result;
    result.clusters.resize(static_cast<std::size_t>(n_comms));
    std::vector<std::map<std::string, std::size_t>> value_counts(static_cast<std::size_t>(n_comms));

    for (std::size_t i = 0; i < partition.node_ids.size(); ++i) {
        const SiteNode* node = nodes.find(partition.node_ids[i]);
        if (!node) throw_invalid("metadata missing for node " + partition.node_ids[i]);
        const auto c = static_cast<std::size_t>(partition.assignment[i]);
        ClusterPurity& cluster = result.clusters[c];
        cluster.community = partition.assignment[i];
        ++cluster.size;
        if (attribute == PurityAttribute::Geography) {
            if (node->geography == kGlobalGeography) continue;
            ++cluster.counted;
            ++value_counts[c][node->geography];
        } else {
            if (node->languages.empty()) continue;
            ++cluster.counted;
            for (const auto& lang : node->languages) ++value_counts[c][lang];
        }
    }

    double weighted_sum = 0.0;
    std::size_t weight_total = 0;
    for (std::size_t c = 0; c < result.clusters.size(); ++c) {
        ClusterPurity& cluster = result.clusters[c];
        cluster.community = static_cast<int>(c);
        if (cluster.counted == 0) {
            ++result.undefined_clusters;
            continue;
        }
        std::size_t modal = 0;
        for (const auto& [value, count] : value_counts[c]) {
            if (count > modal) {
                modal = count;
                cluster.modal_value = value;
            }
        }
        cluster.purity = static_cast<double>(modal) / static_cast<double>(cluster.counted);
        weighted_sum += *cluster.purity * static_cast<double>(cluster.counted);
        weight_total += cluster.counted;
    }
    if (weight_total > 0) {
        result.weighted_mean = weighted_sum / static_cast<double>(weight_total);
    }
    return result;
}

std::string PurityResult::to_json_string() const {
    nlohmann::json clusters_json = nlohmann::json::array();
    for (const auto& c : clusters) {
        nlohmann::json jc;
        jc["community"] = c.community;
        jc["size"] = c.size;
        jc["counted"] = c.counted;
        if (c.purity) {
            jc["modal_value"] = c.modal_value;
            jc["purity"] = *c.purity;
        } else {
            jc["purity"] = nullptr;
        }
        clusters_json.push_back(std::move(jc));
    }
    nlohmann::json j;
    j["clusters"] = std::move(clusters_json);
    if (weighted_mean) j["weighted_mean"] = *weighted_mean;
    else j["weighted_mean"] = nullptr;
    j["undefined_clusters"] = undefined_clusters;
    return j.dump(2) + "\n";
}

double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) throw_invalid("labelings must have equal length");
    const std::size_t n = a.size();
    if (n == 0) throw_invalid("labelings must be nonempty");

    std::map<std::pair<int, int>, std::size_t> joint;
    std::map<int, std::size_t> count_a, count_b;
    for (std::size_t i = 0; i < n; ++i) {
        ++joint[{a[i], b[i]}];
        ++count_a[a[i]];
        ++count_b[b[i]];
    }
    auto choose2 = [](std::size_t k) { return static_cast<double>(k) * (k - 1) / 2.0; };
    double sum_joint = 0.0, sum_a = 0.0, sum_b = 0.0;
    for (const auto& [key, c] : joint) sum_joint += choose2(c);
    for (const auto& [key, c] : count_a) sum_a += choose2(c);
    for (const auto& [key, c] : count_b) sum_b += choose2(c);
    const double total = choose2(n);
    const double expected = sum_a * sum_b / total;
    const double maximum = (sum_a + sum_b) / 2.0;
    if (maximum == expected) return 1.0; // both partitions trivial
    return (sum_joint - expected) / (maximum - expected);
}

} // namespace dualweb
