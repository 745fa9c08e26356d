#pragma once

#include <string>
#include <vector>

#include "core/graph.hpp"
#include "core/nodeset.hpp"

namespace dualweb {

struct IngestReport {
    std::size_t rows = 0;
    std::size_t self_links_dropped = 0;
    std::size_t unresolved_skipped = 0;
    std::vector<std::string> unresolved_hosts; // sorted, unique

    std::string to_json_string() const;
};

// Directed edge-list CSV `src,dst,count`. Endpoints resolve by exact node id
// first, then by host pattern. Counts aggregate per (src, dst); self-links
// are dropped; unresolvable hosts are skipped and reported, never fatal.
DirectedCountGraph ingest_edge_list(const std::string& path, const NodeSet& nodes,
                                    IngestReport* report = nullptr);

// Undirected comparable view of the directed counts.
WeightedGraph build_hyperlink_graph(const DirectedCountGraph& g,
                                    SymmetrizeRule rule = SymmetrizeRule::Sum);

} // namespace dualweb
