#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "core/graph.hpp"
#include "core/nodeset.hpp"

namespace dualweb {

struct CrawlConfig {
    NodeSet seeds;
    int max_pages_per_site = 20;
    int max_depth = 1; // 0 = homepage only, 1 = homepage + directly linked same-site pages
    int per_host_delay_ms = 1000;
    int timeout_ms = 10000;
    std::string user_agent = "dualweb/0.1";
    bool respect_robots = true;
    int workers = 4; // sites crawled concurrently; fetches per host stay serialized

    // node id -> start URL; defaults to http://<first host pattern>/
    std::map<std::string, std::string> start_urls;
    // logical host -> "connect_host:port"; requests keep the logical Host
    // header, like curl --resolve. Lets a fixture corpus serve any hostname.
    std::map<std::string, std::string> resolve_overrides;

    void validate() const;
    static CrawlConfig from_json_string(const std::string& text);
};

struct FetchRecord {
    std::string url;
    std::string host;
    std::int64_t issued_at_ms = 0; // since crawl start; politeness is on issue times
    bool ok = false;
    int status = 0;
    std::string detail;
};

struct CrawlReport {
    std::size_t pages_fetched = 0;
    std::vector<std::pair<std::string, std::string>> failed; // url, reason
    std::size_t skipped_robots = 0;
    std::vector<std::string> sites_without_pages; // seeds the crawl got nothing from
    DirectedCountGraph resolved_edges;
    std::vector<FetchRecord> fetch_log; // in-memory diagnostics; not serialized

    // deterministic (no timestamps), so fixture crawls reproduce byte-for-byte
    std::string to_json_string() const;
};

// Fetch pages of every seed site, extract anchors, resolve targets against
// the seed set and count inter-seed links. Per-URL failures are recorded,
// never fatal. resolved_edges[i][j] counts anchors on fetched pages of i
// resolving to j, i != j; intra-site links are navigation, not ties.
CrawlReport crawl(const CrawlConfig& config);

} // namespace dualweb
