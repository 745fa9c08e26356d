#include "core/hyperlink.hpp"

#include <fstream>
#include <set>

#include <json.hpp>

#include "core/csv.hpp"
#include "core/error.hpp"

namespace dualweb {

std::string IngestReport::to_json_string() const {
    nlohmann::json j;
    j["rows"] = rows;
    j["self_links_dropped"] = self_links_dropped;
    j["unresolved_skipped"] = unresolved_skipped;
    j["unresolved_hosts"] = unresolved_hosts;
    return j.dump(2) + "\n";
}

DirectedCountGraph ingest_edge_list(const std::string& path, const NodeSet& nodes,
                                    IngestReport* report) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw_io("cannot open for reading: " + path);
    CsvReader reader(in, path);

    DirectedCountGraph graph(nodes.ids());
    IngestReport local;
    std::set<std::string> unresolved;

    auto resolve = [&](const std::string& endpoint) -> std::optional<std::size_t> {
        if (auto idx = nodes.index_of(endpoint)) return idx;
        return nodes.resolve_host(endpoint);
    };

    CsvRow row;
    bool first = true;
    while (reader.next(row)) {
        if (first && row.fields.size() >= 2 && row.fields[0] == "src") {
            first = false;
            continue;
        }
        first = false;
        if (row.fields.size() != 3 || row.fields[0].empty() || row.fields[1].empty()) {
            throw_parse(path + ":" + std::to_string(row.line_no) + ": expected src,dst,count");
        }
        const std::uint64_t count = parse_u64_field(row.fields[2], row, path);
        ++local.rows;

        const auto src = resolve(row.fields[0]);
        const auto dst = resolve(row.fields[1]);
        if (!src || !dst) {
            ++local.unresolved_skipped;
            if (!src) unresolved.insert(row.fields[0]);
            if (!dst) unresolved.insert(row.fields[1]);
            continue;
        }
        if (*src == *dst) {
            ++local.self_links_dropped;
            continue;
        }
        graph.add_count(*src, *dst, count);
    }
    local.unresolved_hosts.assign(unresolved.begin(), unresolved.end());
    if (report) *report = std::move(local);
    return graph;
}

WeightedGraph build_hyperlink_graph(const DirectedCountGraph& g, SymmetrizeRule rule) {
    return symmetrize(g, rule);
}

} // namespace dualweb
