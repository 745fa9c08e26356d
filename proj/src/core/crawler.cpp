#include "core/crawler.hpp"

#include <algorithm>
#include <chrono>
#include <condition_variable>
#include <deque>
#include <mutex>
#include <set>
#include <thread>
#include <unordered_map>

#include <httplib.h>
#include <json.hpp>

#include "core/error.hpp"
#include "core/fileio.hpp"
#include "core/html.hpp"
#include "core/robots.hpp"
#include "core/url.hpp"

namespace dualweb {

void CrawlConfig::validate() const {
    if (seeds.size() == 0) throw_invalid("crawl requires at least one seed");
    if (max_pages_per_site < 1) throw_invalid("max_pages_per_site must be >= 1");
    if (max_depth < 0) throw_invalid("max_depth must be >= 0");
    if (per_host_delay_ms < 0 || timeout_ms < 0) throw_invalid("delays must be >= 0");
    if (workers < 1) throw_invalid("workers must be >= 1");
    for (const auto& [id, raw] : start_urls) {
        if (!seeds.index_of(id)) throw_invalid("start_urls references unknown seed " + id);
        if (!parse_url(raw)) throw_invalid("start URL for " + id + " is not an absolute http(s) URL");
    }
}

CrawlConfig CrawlConfig::from_json_string(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw_parse(std::string("crawl config: ") + e.what());
    }
    if (!j.is_object() || !j.contains("metadata")) {
        throw_parse("crawl config: expected an object with a 'metadata' CSV path");
    }
    CrawlConfig cfg;
    cfg.seeds = NodeSet::load_csv(j.at("metadata").get<std::string>());
    cfg.max_pages_per_site = j.value("max_pages_per_site", cfg.max_pages_per_site);
    cfg.max_depth = j.value("max_depth", cfg.max_depth);
    cfg.per_host_delay_ms = j.value("per_host_delay_ms", cfg.per_host_delay_ms);
    cfg.timeout_ms = j.value("timeout_ms", cfg.timeout_ms);
    cfg.user_agent = j.value("user_agent", cfg.user_agent);
    cfg.respect_robots = j.value("respect_robots", cfg.respect_robots);
    cfg.workers = j.value("workers", cfg.workers);
    if (j.contains("start_urls")) {
        for (const auto& [id, url] : j.at("start_urls").items()) {
            cfg.start_urls[id] = url.get<std::string>();
        }
    }
    if (j.contains("resolve_overrides")) {
        for (const auto& [host, target] : j.at("resolve_overrides").items()) {
            cfg.resolve_overrides[normalize_host(host)] = target.get<std::string>();
        }
    }
    cfg.validate();
    return cfg;
}

std::string CrawlReport::to_json_string() const {
    nlohmann::json j;
    j["pages_fetched"] = pages_fetched;
    nlohmann::json failures = nlohmann::json::array();
    for (const auto& [url, reason] : failed) {
        failures.push_back({{"url", url}, {"reason", reason}});
    }
    j["failed"] = std::move(failures);
    j["skipped_robots"] = skipped_robots;
    j["sites_without_pages"] = sites_without_pages;
    j["total_link_count"] = resolved_edges.total_count();
    j["directed_edges"] = resolved_edges.directed_edge_count();
    return j.dump(2) + "\n";
}

namespace {

using Clock = std::chrono::steady_clock;

// Politeness gate: hands out per-host issue slots spaced >= delay apart.
// Workers reserve a slot under the lock, then sleep until it comes up, so
// no two fetches to one host are ever issued closer than the delay.
class HostGate {
public:
    HostGate(Clock::time_point start, int delay_ms) : start_(start), delay_ms_(delay_ms) {}

    // returns the reserved issue time
    Clock::time_point acquire(const std::string& host) {
        Clock::time_point slot;
        {
            std::lock_guard<std::mutex> lock(mutex_);
            const auto now = Clock::now();
            auto& next_allowed = next_allowed_[host];
            if (next_allowed < now) next_allowed = now;
            slot = next_allowed;
            next_allowed += std::chrono::milliseconds(delay_ms_);
        }
        std::this_thread::sleep_until(slot);
        return slot;
    }

    std::int64_t since_start_ms(Clock::time_point t) const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(t - start_).count();
    }

private:
    Clock::time_point start_;
    int delay_ms_;
    std::mutex mutex_;
    std::unordered_map<std::string, Clock::time_point> next_allowed_;
};

struct FetchResult {
    bool transport_ok = false;
    int status = 0;
    std::string body;
    std::string location; // redirect target, if any
    std::string error;
};

FetchResult fetch_once(const CrawlConfig& cfg, const Url& url) {
    std::string connect_host = url.host;
    int connect_port = url.port_number();
    if (auto it = cfg.resolve_overrides.find(url.host); it != cfg.resolve_overrides.end()) {
        const auto colon = it->second.rfind(':');
        if (colon == std::string::npos) {
            connect_host = it->second;
        } else {
            connect_host = it->second.substr(0, colon);
            connect_port = std::stoi(it->second.substr(colon + 1));
        }
    }

    FetchResult result;
    if (url.scheme != "http") {
        result.error = "unsupported scheme: " + url.scheme;
        return result;
    }
    httplib::Client client(connect_host, connect_port);
    client.set_connection_timeout(cfg.timeout_ms / 1000, (cfg.timeout_ms % 1000) * 1000);
    client.set_read_timeout(cfg.timeout_ms / 1000, (cfg.timeout_ms % 1000) * 1000);
    client.set_follow_location(false); // redirects re-enter the queue politely

    httplib::Headers headers = {{"Host", url.authority()}, {"User-Agent", cfg.user_agent}};
    auto response = client.Get(url.path_and_query(), headers);
    if (!response) {
        result.error = httplib::to_string(response.error());
        return result;
    }
    result.transport_ok = true;
    result.status = response->status;
    result.body = response->body;
    if (response->has_header("Location")) result.location = response->get_header_value("Location");
    return result;
}

struct SiteOutcome {
    std::size_t fetched = 0;
    std::size_t robots_skipped = 0;
    std::vector<std::pair<std::string, std::string>> failed;
    std::vector<std::pair<std::size_t, std::uint64_t>> edges; // target node -> count
};

} // namespace

CrawlReport crawl(const CrawlConfig& config) {
    config.validate();
    const NodeSet& seeds = config.seeds;
    const std::size_t n = seeds.size();

    const auto start = Clock::now();
    HostGate gate(start, config.per_host_delay_ms);

    std::mutex robots_mutex;
    std::unordered_map<std::string, RobotsRules> robots_cache;
    std::mutex log_mutex;
    std::vector<FetchRecord> fetch_log;

    auto log_fetch = [&](const Url& url, Clock::time_point at, bool ok, int status,
                         const std::string& detail) {
        std::lock_guard<std::mutex> lock(log_mutex);
        fetch_log.push_back(
            {url.to_string(), url.host, gate.since_start_ms(at), ok, status, detail});
    };

    // robots.txt is fetched once per host, politeness-gated like any fetch;
    // fetch failures fall back to allow-all
    auto robots_for = [&](const Url& page_url) -> RobotsRules {
        {
            std::lock_guard<std::mutex> lock(robots_mutex);
            if (auto it = robots_cache.find(page_url.host); it != robots_cache.end()) {
                return it->second;
            }
        }
        Url robots_url = page_url;
        robots_url.path = "/robots.txt";
        robots_url.query.clear();
        const auto slot = gate.acquire(robots_url.host);
        const FetchResult fetched = fetch_once(config, robots_url);
        log_fetch(robots_url, slot, fetched.transport_ok, fetched.status, "robots");
        RobotsRules rules = (fetched.transport_ok && fetched.status == 200)
                                ? RobotsRules::parse(fetched.body, config.user_agent)
                                : RobotsRules::allow_all();
        std::lock_guard<std::mutex> lock(robots_mutex);
        return robots_cache.emplace(page_url.host, std::move(rules)).first->second;
    };

    std::vector<SiteOutcome> outcomes(n);

    auto crawl_site = [&](std::size_t site) {
        SiteOutcome& outcome = outcomes[site];
        std::map<std::size_t, std::uint64_t> edge_counts;

        Url start_url;
        if (auto it = config.start_urls.find(seeds.at(site).id); it != config.start_urls.end()) {
            start_url = *parse_url(it->second);
        } else {
            auto parsed = parse_url("http://" + seeds.at(site).host_patterns.front() + "/");
            if (!parsed) {
                outcome.failed.emplace_back(seeds.at(site).host_patterns.front(),
                                            "host pattern does not form a URL");
                return;
            }
            start_url = *parsed;
        }

        std::deque<std::pair<Url, int>> queue; // url, depth
        std::set<std::string> visited;         // canonical page keys, caps the site
        queue.emplace_back(start_url, 0);
        visited.insert(start_url.to_string());

        while (!queue.empty()) {
            const auto [url, depth] = queue.front();
            queue.pop_front();

            if (config.respect_robots && !robots_for(url).allowed(url.path_and_query())) {
                ++outcome.robots_skipped;
                continue;
            }
            const auto slot = gate.acquire(url.host);
            const FetchResult result = fetch_once(config, url);
            log_fetch(url, slot, result.transport_ok && result.status < 400, result.status,
                      result.error);

            if (!result.transport_ok) {
                outcome.failed.emplace_back(url.to_string(), result.error);
                continue;
            }
            if (result.status >= 400) {
                outcome.failed.emplace_back(url.to_string(), "http " + std::to_string(result.status));
                continue;
            }
            if (result.status >= 300) {
                // same-site redirect targets re-enter the queue at the same depth
                ++outcome.fetched;
                if (auto target = resolve_reference(url, result.location)) {
                    if (seeds.resolve_host(target->host) == site &&
                        visited.size() < static_cast<std::size_t>(config.max_pages_per_site) &&
                        visited.insert(target->to_string()).second) {
                        queue.emplace_back(*target, depth);
                    }
                }
                continue;
            }

            ++outcome.fetched;
            for (const Url& link : extract_links(result.body, url)) {
                const auto target = seeds.resolve_host(link.host);
                if (!target) continue; // not a seed
                if (*target != site) {
                    ++edge_counts[*target]; // every anchor instance counts
                } else if (depth < config.max_depth &&
                           visited.size() < static_cast<std::size_t>(config.max_pages_per_site) &&
                           visited.insert(link.to_string()).second) {
                    queue.emplace_back(link, depth + 1);
                }
            }
        }
        outcome.edges.assign(edge_counts.begin(), edge_counts.end());
    };

    // one task per site; per-host politeness keeps same-host fetches spaced
    std::vector<std::thread> pool;
    std::mutex queue_mutex;
    std::size_t next_site = 0;
    const unsigned n_workers = static_cast<unsigned>(
        std::min<std::size_t>(static_cast<std::size_t>(config.workers), n));
    for (unsigned w = 0; w < n_workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                std::size_t site;
                {
                    std::lock_guard<std::mutex> lock(queue_mutex);
                    if (next_site >= n) return;
                    site = next_site++;
                }
                crawl_site(site);
            }
        });
    }
    for (auto& t : pool) t.join();

    CrawlReport report{.pages_fetched = 0,
                       .failed = {},
                       .skipped_robots = 0,
                       .sites_without_pages = {},
                       .resolved_edges = DirectedCountGraph(seeds.ids()),
                       .fetch_log = {}};
    for (std::size_t site = 0; site < n; ++site) {
        const SiteOutcome& outcome = outcomes[site];
        report.pages_fetched += outcome.fetched;
        report.skipped_robots += outcome.robots_skipped;
        for (const auto& f : outcome.failed) report.failed.push_back(f);
        if (outcome.fetched == 0) report.sites_without_pages.push_back(seeds.at(site).id);
        for (const auto& [target, count] : outcome.edges) {
            report.resolved_edges.add_count(site, target, count);
        }
    }
    std::stable_sort(fetch_log.begin(), fetch_log.end(),
                     [](const FetchRecord& a, const FetchRecord& b) {
                         return a.issued_at_ms < b.issued_at_ms;
                     });
    report.fetch_log = std::move(fetch_log);
    return report;
}

} // namespace dualweb
