#include "core/audience.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <set>
#include <thread>
#include <unordered_map>

#include <json.hpp>

#include "core/csv.hpp"
#include "core/error.hpp"
#include "core/fileio.hpp"

namespace dualweb {

Panel Panel::load_json(const std::string& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_text_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw_parse(path + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("universe_size")) {
        throw_parse(path + ": expected an object with 'universe_size'");
    }
    Panel panel;
    if (!j["universe_size"].is_number_unsigned() || j["universe_size"].get<std::uint64_t>() == 0) {
        throw_invalid(path + ": universe_size must be a positive integer");
    }
    panel.universe_size = j["universe_size"].get<std::uint64_t>();
    panel.window = j.value("window", "");
    return panel;
}

void Panel::save_json(const std::string& path) const {
    nlohmann::json j;
    j["universe_size"] = universe_size;
    j["window"] = window;
    write_text_file(path, j.dump(2) + "\n");
}

VisitationLog::VisitationLog(const NodeSet& nodes,
                             const std::vector<std::pair<std::string, std::string>>& pairs) {
    site_ids_ = nodes.ids();
    std::unordered_map<std::string, std::size_t> user_index;
    std::vector<std::pair<std::size_t, std::size_t>> resolved;
    resolved.reserve(pairs.size());
    std::set<std::string> unknown_sites;
    for (const auto& [user, site] : pairs) {
        auto site_idx = nodes.index_of(site);
        if (!site_idx) {
            unknown_sites.insert(site);
            continue;
        }
        auto [it, inserted] = user_index.emplace(user, user_ids_.size());
        if (inserted) user_ids_.push_back(user);
        resolved.emplace_back(it->second, *site_idx);
    }
    if (!unknown_sites.empty()) {
        std::string msg = "visitation log references sites absent from the node set:";
        for (const auto& s : unknown_sites) msg += " " + s;
        throw_invalid(msg);
    }
    blocks_per_site_ = (user_ids_.size() + 63) / 64;
    bits_.assign(site_ids_.size() * blocks_per_site_, 0);
    for (const auto& [u, s] : resolved) {
        bits_[s * blocks_per_site_ + u / 64] |= std::uint64_t{1} << (u % 64);
    }
    visitor_counts_.assign(site_ids_.size(), 0);
    for (std::size_t s = 0; s < site_ids_.size(); ++s) {
        std::uint64_t count = 0;
        for (std::size_t b = 0; b < blocks_per_site_; ++b) {
            count += static_cast<std::uint64_t>(std::popcount(bits_[s * blocks_per_site_ + b]));
        }
        visitor_counts_[s] = count;
    }
}

VisitationLog VisitationLog::load_csv(const std::string& path, const NodeSet& nodes) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw_io("cannot open for reading: " + path);
    CsvReader reader(in, path);
    std::vector<std::pair<std::string, std::string>> pairs;
    CsvRow row;
    bool first = true;
    while (reader.next(row)) {
        if (first && row.fields.size() >= 2 && row.fields[0] == "user_id") {
            first = false;
            continue;
        }
        first = false;
        if (row.fields.size() != 2 || row.fields[0].empty() || row.fields[1].empty()) {
            throw_parse(path + ":" + std::to_string(row.line_no) + ": expected user_id,site_id");
        }
        pairs.emplace_back(row.fields[0], row.fields[1]);
    }
    return VisitationLog(nodes, pairs);
}

void VisitationLog::save_csv(const std::string& path) const {
    std::string out = "user_id,site_id\n";
    for (std::size_t s = 0; s < site_ids_.size(); ++s) {
        for (std::size_t u = 0; u < user_ids_.size(); ++u) {
            if (bits_[s * blocks_per_site_ + u / 64] >> (u % 64) & 1) {
                out += user_ids_[u] + "," + site_ids_[s] + "\n";
            }
        }
    }
    write_text_file(path, out);
}

std::uint64_t VisitationLog::shared_visitors(std::size_t a, std::size_t b) const {
    const std::uint64_t* pa = bits_.data() + a * blocks_per_site_;
    const std::uint64_t* pb = bits_.data() + b * blocks_per_site_;
    std::uint64_t count = 0;
    for (std::size_t k = 0; k < blocks_per_site_; ++k) {
        count += static_cast<std::uint64_t>(std::popcount(pa[k] & pb[k]));
    }
    return count;
}

DuplicationMatrix::DuplicationMatrix(std::vector<std::string> node_ids, std::vector<double> d)
    : ids_(std::move(node_ids)), d_(std::move(d)) {
    const std::size_t n = ids_.size();
    if (d_.size() != n * n) throw_invalid("duplication matrix size does not match node count");
    for (std::size_t i = 0; i < n; ++i) {
        const double ri = d_[i * n + i];
        if (ri < 0.0 || ri > 1.0) throw_invalid("reach of " + ids_[i] + " outside [0,1]");
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dij = d_[i * n + j];
            const double rj = d_[j * n + j];
            if (dij != d_[j * n + i]) throw_invalid("duplication matrix not symmetric");
            if (dij < 0.0 || dij > 1.0) throw_invalid("duplication outside [0,1]");
            if (dij > std::min(ri, rj)) {
                throw_invalid("duplication of (" + ids_[i] + "," + ids_[j] +
                              ") exceeds one of the reaches");
            }
            // 1e-12 slack absorbs rounding in ri + rj - 1 for count-derived fractions
            if (dij < ri + rj - 1.0 - 1e-12) {
                throw_invalid("duplication of (" + ids_[i] + "," + ids_[j] +
                              ") below the Frechet lower bound");
            }
        }
    }
}

std::vector<double> compute_reach(const VisitationLog& log, const Panel& panel) {
    if (panel.universe_size == 0) throw_invalid("panel universe_size must be positive");
    if (log.user_count() > panel.universe_size) {
        throw_invalid("log references " + std::to_string(log.user_count()) +
                      " users, more than the panel universe of " +
                      std::to_string(panel.universe_size));
    }
    std::vector<double> reach(log.site_count());
    for (std::size_t s = 0; s < log.site_count(); ++s) {
        reach[s] = static_cast<double>(log.visitors_of(s)) / static_cast<double>(panel.universe_size);
    }
    return reach;
}

DuplicationMatrix duplication_matrix(const VisitationLog& log, const Panel& panel,
                                     unsigned n_threads) {
    const std::vector<double> reach = compute_reach(log, panel); // also validates the panel
    const std::size_t n = log.site_count();
    const double universe = static_cast<double>(panel.universe_size);
    std::vector<double> d(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) d[i * n + i] = reach[i];

    // enumerate unordered pairs (i, j), i < j, in a flat index space
    const std::size_t n_pairs = n >= 2 ? n * (n - 1) / 2 : 0;
    if (n_pairs == 0) return DuplicationMatrix(log.site_ids(), std::move(d));
    if (n_threads == 0) n_threads = std::max(1u, std::thread::hardware_concurrency());
    n_threads = static_cast<unsigned>(std::min<std::size_t>(n_threads, std::max<std::size_t>(n_pairs, 1)));

    auto worker = [&](std::size_t begin, std::size_t end) {
        // map a flat pair index k to (i, j); walk rows forward from the start
        std::size_t i = 0, row_start = 0;
        while (row_start + (n - 1 - i) <= begin) {
            row_start += n - 1 - i;
            ++i;
        }
        std::size_t j = i + 1 + (begin - row_start);
        for (std::size_t k = begin; k < end; ++k) {
            const double dij = static_cast<double>(log.shared_visitors(i, j)) / universe;
            d[i * n + j] = dij;
            d[j * n + i] = dij;
            if (++j == n) {
                ++i;
                j = i + 1;
            }
        }
    };

    if (n_threads <= 1 || n_pairs < 2048) {
        worker(0, n_pairs);
    } else {
        std::vector<std::thread> threads;
        const std::size_t chunk = (n_pairs + n_threads - 1) / n_threads;
        for (unsigned t = 0; t < n_threads; ++t) {
            const std::size_t begin = std::min<std::size_t>(t * chunk, n_pairs);
            const std::size_t end = std::min<std::size_t>(begin + chunk, n_pairs);
            if (begin < end) threads.emplace_back(worker, begin, end);
        }
        for (auto& t : threads) t.join();
    }
    return DuplicationMatrix(log.site_ids(), std::move(d));
}

double expected_duplication(double reach_i, double reach_j) {
    if (reach_i < 0.0 || reach_i > 1.0 || reach_j < 0.0 || reach_j > 1.0) {
        throw_invalid("reach fractions must lie in [0,1]");
    }
    return reach_i * reach_j;
}

WeightedGraph build_audience_graph(const DuplicationMatrix& dup, double min_margin) {
    const std::size_t n = dup.size();
    std::vector<double> weights(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double expected = expected_duplication(dup.reach(i), dup.reach(j));
            const double observed = dup.at(i, j);
            if (observed > expected + min_margin) {
                weights[i * n + j] = weights[j * n + i] = observed - expected;
            }
        }
    }
    return WeightedGraph(dup.node_ids(), std::move(weights));
}

} // namespace dualweb
