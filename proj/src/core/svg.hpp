#pragma once

#include <string>

#include "core/communities.hpp"
#include "core/graph.hpp"
#include "core/layout.hpp"
#include "core/metrics.hpp"
#include "core/nodeset.hpp"

namespace dualweb {

// Network map in the style of the dual-network figures: node fill encodes
// geography (stable palette keyed by sorted codes, GLOBAL gray), the node
// label is the community id, edge opacity follows the weight quantile.
// Only the top edge_quantile share of edges by weight is drawn (the full
// graph stays in the data outputs); edge_quantile 1 draws everything.
// SVG node elements appear in graph node order.
std::string render_network_svg(const WeightedGraph& g, const LayoutResult& layout,
                               const CommunityPartition& partition, const NodeSet& nodes,
                               double edge_quantile = 0.2);

void save_network_svg(const WeightedGraph& g, const LayoutResult& layout,
                      const CommunityPartition& partition, const NodeSet& nodes,
                      const std::string& path, double edge_quantile = 0.2);

// Log-log scatter of a degree CCDF.
void save_degree_ccdf_svg(const std::vector<CcdfRow>& rows, const std::string& path);

} // namespace dualweb
