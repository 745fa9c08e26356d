#include "core/synth.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iterator>

#include <json.hpp>

#include "core/error.hpp"
#include "core/rng.hpp"

namespace dualweb {

namespace {

// geography/language pairs assigned to blocks in order; blocks beyond the
// table fall back to numbered codes
constexpr std::pair<const char*, const char*> kBlockCultures[] = {
    {"US", "en"}, {"BR", "pt"}, {"DE", "de"}, {"JP", "ja"}, {"RU", "ru"},
    {"FR", "fr"}, {"CN", "zh"}, {"TR", "tr"}, {"KR", "ko"}, {"ES", "es"},
    {"IT", "it"}, {"PL", "pl"}, {"IN", "hi"}, {"MX", "es"}, {"NL", "nl"},
    {"SE", "sv"}, {"EG", "ar"}, {"VN", "vi"}, {"TH", "th"}, {"GR", "el"},
};
constexpr int kBlockCultureCount = static_cast<int>(std::size(kBlockCultures));

std::string site_id(int index, bool global) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), global ? "global%03d.example" : "site%03d.example", index);
    return buf;
}

int block_of_site(const SynthConfig& cfg, int site_index) {
    // global sites come first in the roster; block sites round-robin
    if (site_index < cfg.n_global_sites) return -1;
    return (site_index - cfg.n_global_sites) % cfg.n_blocks;
}

} // namespace

void SynthConfig::validate() const {
    if (n_sites < 1) throw_invalid("n_sites must be >= 1");
    if (n_blocks < 1) throw_invalid("n_blocks must be >= 1");
    if (n_global_sites < 0 || n_global_sites >= n_sites) {
        throw_invalid("n_global_sites must lie in [0, n_sites)");
    }
    if (n_users < 0) throw_invalid("n_users must be >= 0");
    for (double p : {p_in, p_out, p_global}) {
        if (p < 0.0 || p > 1.0) throw_invalid("visit probabilities must lie in [0,1]");
    }
    if (p_in <= p_out) throw_invalid("p_in must exceed p_out");
    if (ba_m < 1 || ba_m >= n_sites) throw_invalid("ba_m must lie in [1, n_sites)");
}

SynthConfig SynthConfig::from_json_string(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw_parse(std::string("synth config: ") + e.what());
    }
    SynthConfig cfg;
    cfg.n_sites = j.value("n_sites", cfg.n_sites);
    cfg.n_blocks = j.value("n_blocks", cfg.n_blocks);
    cfg.n_global_sites = j.value("n_global_sites", cfg.n_global_sites);
    cfg.n_users = j.value("n_users", cfg.n_users);
    cfg.p_in = j.value("p_in", cfg.p_in);
    cfg.p_out = j.value("p_out", cfg.p_out);
    cfg.p_global = j.value("p_global", cfg.p_global);
    cfg.ba_m = j.value("ba_m", cfg.ba_m);
    cfg.seed = j.value("seed", cfg.seed);
    if (j.contains("owner_cliques")) {
        for (const auto& clique : j.at("owner_cliques")) {
            std::vector<std::string> ids;
            for (const auto& id : clique) ids.push_back(id.get<std::string>());
            cfg.owner_cliques.push_back(std::move(ids));
        }
    }
    cfg.validate();
    return cfg;
}

NodeSet synth_site_metadata(const SynthConfig& cfg) {
    cfg.validate();
    std::vector<SiteNode> nodes;
    nodes.reserve(static_cast<std::size_t>(cfg.n_sites));
    for (int i = 0; i < cfg.n_sites; ++i) {
        SiteNode node;
        const int block = block_of_site(cfg, i);
        if (block < 0) {
            node.id = site_id(i, true);
            node.geography = kGlobalGeography;
            // global platforms offer several languages
            node.languages = {"en", kBlockCultures[i % kBlockCultureCount].second};
        } else {
            node.id = site_id(i - cfg.n_global_sites, false);
            if (block < kBlockCultureCount) {
                node.geography = kBlockCultures[block].first;
                node.languages = {kBlockCultures[block].second};
            } else {
                node.geography = "G" + std::to_string(block);
                node.languages = {"l" + std::to_string(block)};
            }
        }
        node.host_patterns = {node.id};
        nodes.push_back(std::move(node));
    }
    return NodeSet::from_nodes(std::move(nodes));
}

SynthAudience generate_audience_log(const SynthConfig& cfg) {
    cfg.validate();
    NodeSet nodes = synth_site_metadata(cfg);
    Rng rng(derive_seed(cfg.seed, 1));

    std::vector<std::pair<std::string, std::string>> pairs;
    for (int u = 0; u < cfg.n_users; ++u) {
        const int user_block = u % cfg.n_blocks; // uniform assignment
        char user_id[16];
        std::snprintf(user_id, sizeof(user_id), "u%06d", u);
        for (int s = 0; s < cfg.n_sites; ++s) {
            const int site_block = block_of_site(cfg, s);
            const double p = site_block < 0 ? cfg.p_global
                             : site_block == user_block ? cfg.p_in
                                                        : cfg.p_out;
            if (rng.bernoulli(p)) pairs.emplace_back(user_id, nodes.at(s).id);
        }
    }

    Panel panel;
    panel.universe_size = static_cast<std::uint64_t>(std::max(cfg.n_users, 1));
    panel.window = "synthetic";
    VisitationLog log(nodes, pairs);
    return SynthAudience{std::move(nodes), std::move(log), std::move(panel)};
}

DirectedCountGraph generate_hyperlink_graph(const SynthConfig& cfg) {
    cfg.validate();
    NodeSet nodes = synth_site_metadata(cfg);
    Rng rng(derive_seed(cfg.seed, 2));

    DirectedCountGraph graph(nodes.ids());
    const int n = cfg.n_sites;
    std::vector<std::uint64_t> in_degree(static_cast<std::size_t>(n), 0);

    // sites arrive in roster order; each links to ba_m distinct predecessors
    // chosen with probability proportional to in-degree + 1, blind to blocks
    std::vector<int> chosen;
    for (int i = 1; i < n; ++i) {
        const int n_links = std::min(i, cfg.ba_m);
        chosen.clear();
        while (static_cast<int>(chosen.size()) < n_links) {
            std::uint64_t total = 0;
            for (int t = 0; t < i; ++t) total += in_degree[t] + 1;
            std::uint64_t draw = rng.next_below(total);
            int target = 0;
            for (int t = 0; t < i; ++t) {
                const std::uint64_t mass = in_degree[t] + 1;
                if (draw < mass) {
                    target = t;
                    break;
                }
                draw -= mass;
            }
            if (std::find(chosen.begin(), chosen.end(), target) != chosen.end()) continue;
            chosen.push_back(target);
        }
        for (int target : chosen) {
            graph.add_count(static_cast<std::size_t>(i), static_cast<std::size_t>(target), 1);
            ++in_degree[target];
        }
    }

    // owner cliques: heavy reciprocal linking regardless of block
    constexpr std::uint64_t kCliqueLinkCount = 3;
    for (const auto& clique : cfg.owner_cliques) {
        std::vector<std::size_t> members;
        for (const auto& id : clique) {
            auto idx = nodes.index_of(id);
            if (!idx) throw_invalid("owner clique references unknown site " + id);
            members.push_back(*idx);
        }
        for (std::size_t a : members)
            for (std::size_t b : members)
                if (a != b) graph.add_count(a, b, kCliqueLinkCount);
    }
    return graph;
}

void write_synth_dataset(const SynthConfig& cfg, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    const auto path = [&](const char* name) {
        return (std::filesystem::path(out_dir) / name).string();
    };
    SynthAudience audience = generate_audience_log(cfg);
    audience.nodes.save_csv(path("nodes.csv"));
    audience.log.save_csv(path("visits.csv"));
    audience.panel.save_json(path("panel.json"));
    generate_hyperlink_graph(cfg).save_edge_csv(path("edges.csv"));
}

} // namespace dualweb
