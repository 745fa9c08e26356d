#include "core/nodeset.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "core/csv.hpp"
#include "core/error.hpp"
#include "core/fileio.hpp"
#include "core/strings.hpp"

namespace dualweb {

std::string normalize_host(std::string_view host) {
    if (auto colon = host.rfind(':'); colon != std::string_view::npos) {
        // only strip a port, not a raw IPv6 address
        bool digits = colon + 1 < host.size();
        for (std::size_t i = colon + 1; i < host.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(host[i]))) digits = false;
        }
        if (digits && host.find(':') == colon) host = host.substr(0, colon);
    }
    std::string h = to_lower(trim(host));
    if (starts_with(h, "www.")) h.erase(0, 4);
    return h;
}

NodeSet NodeSet::from_nodes(std::vector<SiteNode> nodes, std::size_t node_cap) {
    if (nodes.size() > node_cap) {
        throw_invalid("node set has " + std::to_string(nodes.size()) + " nodes, above the cap of " +
                      std::to_string(node_cap));
    }
    NodeSet ns;
    ns.nodes_ = std::move(nodes);
    for (std::size_t i = 0; i < ns.nodes_.size(); ++i) {
        SiteNode& node = ns.nodes_[i];
        if (node.id.empty()) throw_invalid("node " + std::to_string(i) + " has an empty id");
        if (!ns.by_id_.emplace(node.id, i).second) throw_invalid("duplicate node id: " + node.id);
        if (node.geography.empty()) throw_invalid("node " + node.id + " has an empty geography");
        if (node.host_patterns.empty()) node.host_patterns.push_back(node.id);
        std::sort(node.languages.begin(), node.languages.end());
        node.languages.erase(std::unique(node.languages.begin(), node.languages.end()),
                             node.languages.end());
        for (const auto& raw : node.host_patterns) {
            const std::string pattern = normalize_host(raw);
            if (pattern.empty()) throw_invalid("node " + node.id + " has an empty host pattern");
            auto [it, inserted] = ns.by_pattern_.emplace(pattern, i);
            if (!inserted && it->second != i) {
                throw_invalid("host pattern '" + pattern + "' claimed by both " +
                              ns.nodes_[it->second].id + " and " + node.id);
            }
        }
    }
    return ns;
}

NodeSet NodeSet::load_csv(const std::string& path, std::size_t node_cap) {
    std::vector<SiteNode> nodes;
    for (const CsvRow& row : read_csv_file(path, "id")) {
        if (row.fields.size() != 4) {
            throw_parse(path + ":" + std::to_string(row.line_no) +
                        ": expected 4 columns id,host_patterns,languages,geography");
        }
        SiteNode node;
        node.id = row.fields[0];
        for (const auto& p : split(row.fields[1], ';')) {
            if (!trim(p).empty()) node.host_patterns.emplace_back(trim(p));
        }
        for (const auto& l : split(row.fields[2], ';')) {
            if (!trim(l).empty()) node.languages.emplace_back(trim(l));
        }
        node.geography = row.fields[3];
        nodes.push_back(std::move(node));
    }
    return from_nodes(std::move(nodes), node_cap);
}

void NodeSet::save_csv(const std::string& path) const {
    std::string out = "id,host_patterns,languages,geography\n";
    for (const SiteNode& node : nodes_) {
        std::string patterns;
        for (std::size_t i = 0; i < node.host_patterns.size(); ++i) {
            if (i) patterns += ';';
            patterns += node.host_patterns[i];
        }
        std::string languages;
        for (std::size_t i = 0; i < node.languages.size(); ++i) {
            if (i) languages += ';';
            languages += node.languages[i];
        }
        out += csv_join({node.id, patterns, languages, node.geography});
        out += '\n';
    }
    write_text_file(path, out);
}

std::vector<std::string> NodeSet::ids() const {
    std::vector<std::string> out;
    out.reserve(nodes_.size());
    for (const auto& n : nodes_) out.push_back(n.id);
    return out;
}

std::optional<std::size_t> NodeSet::index_of(const std::string& id) const {
    auto it = by_id_.find(id);
    if (it == by_id_.end()) return std::nullopt;
    return it->second;
}

const SiteNode* NodeSet::find(const std::string& id) const {
    auto idx = index_of(id);
    return idx ? &nodes_[*idx] : nullptr;
}

std::optional<std::size_t> NodeSet::resolve_host(std::string_view host) const {
    std::string h = normalize_host(host);
    // walk suffixes from longest to shortest so subdomain nodes win
    std::string_view view = h;
    for (;;) {
        auto it = by_pattern_.find(std::string(view));
        if (it != by_pattern_.end()) return it->second;
        auto dot = view.find('.');
        if (dot == std::string_view::npos) return std::nullopt;
        view = view.substr(dot + 1);
    }
}

} // namespace dualweb
