#include "core/svg.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>

#include "core/error.hpp"
#include "core/fileio.hpp"
#include "core/strings.hpp"

namespace dualweb {

namespace {

// 20-color qualitative cycle; assignment is deterministic by sorted code.
const char* kPalette[20] = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2",
    "#bcbd22", "#17becf", "#aec7e8", "#ffbb78", "#98df8a", "#ff9896", "#c5b0d5",
    "#c49c94", "#f7b6d2", "#dbdb8d", "#9edae5", "#393b79", "#ad494a"};

const char* kGlobalColor = "#999999";

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

} // namespace

std::string render_network_svg(const WeightedGraph& g, const LayoutResult& layout,
                               const CommunityPartition& partition, const NodeSet& nodes,
                               double edge_quantile) {
    const std::size_t n = g.size();
    if (n == 0) throw_invalid("cannot render an empty graph");
    if (edge_quantile <= 0.0 || edge_quantile > 1.0) {
        throw_invalid("edge_quantile must lie in (0,1]");
    }

    std::unordered_map<std::string, std::size_t> layout_index;
    for (std::size_t i = 0; i < layout.node_ids.size(); ++i) layout_index[layout.node_ids[i]] = i;
    std::unordered_map<std::string, int> community;
    for (std::size_t i = 0; i < partition.node_ids.size(); ++i) {
        community[partition.node_ids[i]] = partition.assignment[i];
    }

    // validate inputs cover the graph before emitting anything
    std::set<std::string> geographies;
    for (std::size_t i = 0; i < n; ++i) {
        const std::string& id = g.node_id(i);
        if (!layout_index.count(id)) throw_invalid("layout missing position for node " + id);
        if (!community.count(id)) throw_invalid("partition missing community for node " + id);
        const SiteNode* node = nodes.find(id);
        if (!node) throw_invalid("metadata missing for node " + id);
        if (node->geography != kGlobalGeography) geographies.insert(node->geography);
    }
    std::map<std::string, std::string> color_of;
    std::size_t color_index = 0;
    for (const auto& geo : geographies) color_of[geo] = kPalette[color_index++ % 20];

    // edge down-sampling by weight quantile
    struct Edge {
        std::size_t i, j;
        double w;
    };
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (g.weight(i, j) > 0.0) edges.push_back({i, j, g.weight(i, j)});
    std::vector<double> sorted_w;
    sorted_w.reserve(edges.size());
    for (const auto& e : edges) sorted_w.push_back(e.w);
    std::sort(sorted_w.begin(), sorted_w.end());
    double cutoff = 0.0;
    if (!edges.empty() && edge_quantile < 1.0) {
        const auto idx = static_cast<std::size_t>(
            std::floor((1.0 - edge_quantile) * static_cast<double>(sorted_w.size() - 1)));
        cutoff = sorted_w[idx];
    }
    // opacity from the weight's rank among all edges
    auto rank_fraction = [&](double w) {
        const auto lo = std::lower_bound(sorted_w.begin(), sorted_w.end(), w) - sorted_w.begin();
        return sorted_w.size() > 1
                   ? static_cast<double>(lo) / static_cast<double>(sorted_w.size() - 1)
                   : 1.0;
    };

    const double width = layout.width > 0.0 ? layout.width : 1000.0;
    const double height = layout.height > 0.0 ? layout.height : 1000.0;
    const double legend_width = 150.0;

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
           format_fixed(width + legend_width, 0) + "\" height=\"" + format_fixed(height, 0) +
           "\" viewBox=\"0 0 " + format_fixed(width + legend_width, 0) + " " +
           format_fixed(height, 0) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

    svg += "<g class=\"edges\" stroke=\"#555555\">\n";
    for (const auto& e : edges) {
        if (e.w < cutoff) continue;
        const auto& p1 = layout.positions[layout_index.at(g.node_id(e.i))];
        const auto& p2 = layout.positions[layout_index.at(g.node_id(e.j))];
        const double opacity = 0.15 + 0.6 * rank_fraction(e.w);
        svg += "<line x1=\"" + format_fixed(p1[0], 2) + "\" y1=\"" + format_fixed(p1[1], 2) +
               "\" x2=\"" + format_fixed(p2[0], 2) + "\" y2=\"" + format_fixed(p2[1], 2) +
               "\" stroke-opacity=\"" + format_fixed(opacity, 3) + "\"/>\n";
    }
    svg += "</g>\n";

    svg += "<g class=\"nodes\">\n";
    for (std::size_t i = 0; i < n; ++i) {
        const std::string& id = g.node_id(i);
        const auto& p = layout.positions[layout_index.at(id)];
        const SiteNode* node = nodes.find(id);
        const std::string color = node->geography == kGlobalGeography
                                      ? kGlobalColor
                                      : color_of.at(node->geography);
        svg += "<circle cx=\"" + format_fixed(p[0], 2) + "\" cy=\"" + format_fixed(p[1], 2) +
               "\" r=\"6\" fill=\"" + color + "\" stroke=\"#333333\" stroke-width=\"0.5\">" +
               "<title>" + xml_escape(id) + "</title></circle>\n";
        svg += "<text x=\"" + format_fixed(p[0], 2) + "\" y=\"" + format_fixed(p[1] + 3.0, 2) +
               "\" font-size=\"8\" text-anchor=\"middle\" fill=\"#000000\">" +
               std::to_string(community.at(id)) + "</text>\n";
    }
    svg += "</g>\n";

    // legend: geography swatches, GLOBAL last when present
    svg += "<g class=\"legend\" font-size=\"12\">\n";
    double ly = 20.0;
    const double lx = width + 15.0;
    svg += "<text x=\"" + format_fixed(lx, 1) + "\" y=\"" + format_fixed(ly, 1) +
           "\" font-weight=\"bold\">Geography</text>\n";
    ly += 18.0;
    bool has_global = false;
    for (std::size_t i = 0; i < n; ++i) {
        if (nodes.find(g.node_id(i))->geography == kGlobalGeography) has_global = true;
    }
    std::vector<std::pair<std::string, std::string>> legend_rows(color_of.begin(), color_of.end());
    if (has_global) legend_rows.emplace_back(kGlobalGeography, kGlobalColor);
    for (const auto& [geo, color] : legend_rows) {
        svg += "<rect x=\"" + format_fixed(lx, 1) + "\" y=\"" + format_fixed(ly - 10.0, 1) +
               "\" width=\"12\" height=\"12\" fill=\"" + color + "\"/>\n";
        svg += "<text x=\"" + format_fixed(lx + 18.0, 1) + "\" y=\"" + format_fixed(ly, 1) + "\">" +
               xml_escape(geo) + "</text>\n";
        ly += 16.0;
    }
    svg += "</g>\n</svg>\n";
    return svg;
}

void save_network_svg(const WeightedGraph& g, const LayoutResult& layout,
                      const CommunityPartition& partition, const NodeSet& nodes,
                      const std::string& path, double edge_quantile) {
    write_text_file(path, render_network_svg(g, layout, partition, nodes, edge_quantile));
}

void save_degree_ccdf_svg(const std::vector<CcdfRow>& rows, const std::string& path) {
    const double width = 640.0, height = 480.0, margin = 60.0;
    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + format_fixed(width, 0) +
           "\" height=\"" + format_fixed(height, 0) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

    // log-log axes; zero-degree rows cannot be drawn on a log axis
    std::vector<CcdfRow> plot_rows;
    for (const auto& r : rows)
        if (r.degree > 0 && r.ccdf > 0.0) plot_rows.push_back(r);
    if (!plot_rows.empty()) {
        double max_deg = 0.0, min_ccdf = 1.0;
        for (const auto& r : plot_rows) {
            max_deg = std::max(max_deg, static_cast<double>(r.degree));
            min_ccdf = std::min(min_ccdf, r.ccdf);
        }
        const double lx_max = std::log10(std::max(max_deg, 1.0));
        const double ly_min = std::log10(std::min(min_ccdf, 0.999999));
        auto px = [&](double deg) {
            const double f = lx_max > 0.0 ? std::log10(deg) / lx_max : 0.0;
            return margin + f * (width - 2.0 * margin);
        };
        auto py = [&](double ccdf) {
            const double f = ly_min < 0.0 ? std::log10(ccdf) / ly_min : 0.0;
            return margin + f * (height - 2.0 * margin);
        };
        svg += "<line x1=\"" + format_fixed(margin, 1) + "\" y1=\"" +
               format_fixed(height - margin, 1) + "\" x2=\"" + format_fixed(width - margin, 1) +
               "\" y2=\"" + format_fixed(height - margin, 1) + "\" stroke=\"#000000\"/>\n";
        svg += "<line x1=\"" + format_fixed(margin, 1) + "\" y1=\"" + format_fixed(margin, 1) +
               "\" x2=\"" + format_fixed(margin, 1) + "\" y2=\"" +
               format_fixed(height - margin, 1) + "\" stroke=\"#000000\"/>\n";
        for (const auto& r : plot_rows) {
            svg += "<circle cx=\"" + format_fixed(px(static_cast<double>(r.degree)), 2) +
                   "\" cy=\"" + format_fixed(py(r.ccdf), 2) +
                   "\" r=\"3\" fill=\"#1f77b4\" fill-opacity=\"0.8\"/>\n";
        }
        svg += "<text x=\"" + format_fixed(width / 2.0, 1) + "\" y=\"" +
               format_fixed(height - 20.0, 1) +
               "\" text-anchor=\"middle\" font-size=\"13\">degree (log)</text>\n";
        svg += "<text x=\"18\" y=\"" + format_fixed(height / 2.0, 1) +
               "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 " +
               format_fixed(height / 2.0, 1) + ")\">P(D &#8805; d) (log)</text>\n";
    }
    svg += "</svg>\n";
    write_text_file(path, svg);
}

} // namespace dualweb
