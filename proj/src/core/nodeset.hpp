#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace dualweb {

// Geography sentinel for sites without an establishable focal geography.
inline constexpr const char* kGlobalGeography = "GLOBAL";

// Default dense-matrix node cap. The networks this toolkit targets are
// desk-scale (about a thousand sites); the cap catches accidental ingestion
// of page-level data, which would blow up the O(n^2) matrices.
inline constexpr std::size_t kDefaultNodeCap = 5000;

// A website/domain node. `host_patterns` map crawl targets and edge-list
// hosts onto the node; a subdomain pattern (es.wikipedia.org) wins over its
// parent domain (wikipedia.org) via longest-suffix matching.
struct SiteNode {
    std::string id;
    std::vector<std::string> host_patterns;
    std::vector<std::string> languages; // sorted, unique
    std::string geography;              // country code or kGlobalGeography
};

class NodeSet {
public:
    static NodeSet from_nodes(std::vector<SiteNode> nodes, std::size_t node_cap = kDefaultNodeCap);

    // CSV columns: id,host_patterns(;-separated),languages(;-separated),geography
    static NodeSet load_csv(const std::string& path, std::size_t node_cap = kDefaultNodeCap);
    void save_csv(const std::string& path) const;

    std::size_t size() const { return nodes_.size(); }
    const SiteNode& at(std::size_t index) const { return nodes_[index]; }
    const std::vector<SiteNode>& nodes() const { return nodes_; }
    std::vector<std::string> ids() const;

    std::optional<std::size_t> index_of(const std::string& id) const;
    const SiteNode* find(const std::string& id) const;

    // Longest-suffix match of a hostname against the host patterns.
    // A leading "www." and any port are ignored; matching is at label
    // boundaries, so "notwikipedia.org" does not match "wikipedia.org".
    std::optional<std::size_t> resolve_host(std::string_view host) const;

private:
    std::vector<SiteNode> nodes_;
    std::unordered_map<std::string, std::size_t> by_id_;
    std::unordered_map<std::string, std::size_t> by_pattern_;
};

// Strips port, lowercases, drops one leading "www.".
std::string normalize_host(std::string_view host);

} // namespace dualweb
