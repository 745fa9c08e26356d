#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/audience.hpp"
#include "core/graph.hpp"
#include "core/nodeset.hpp"

namespace dualweb {

// Paired generators planting the two structural hypotheses under test:
// audience behavior blocked along geo-linguistic lines (users visit sites of
// their own block far more often) and hyperlinking dominated by hubs
// (preferential attachment that ignores blocks entirely). Owner cliques add
// heavy cross-links between designated sites regardless of block, the way
// multi-edition publishers interlink their properties.
struct SynthConfig {
    int n_sites = 200;
    int n_blocks = 5;
    int n_global_sites = 10; // GLOBAL geography, visited by everyone at p_global
    int n_users = 10000;
    double p_in = 0.15;  // visit probability, site of the user's own block
    double p_out = 0.01; // visit probability, site of another block
    double p_global = 0.4;
    int ba_m = 3; // attachment edges per new site
    std::vector<std::vector<std::string>> owner_cliques;
    std::uint64_t seed = 0;

    void validate() const;
    static SynthConfig from_json_string(const std::string& text);
};

struct SynthAudience {
    NodeSet nodes;
    VisitationLog log;
    Panel panel;
};

// Site roster shared by both generators: block sites get one geography and
// language per block, global sites get geography GLOBAL.
NodeSet synth_site_metadata(const SynthConfig& cfg);

SynthAudience generate_audience_log(const SynthConfig& cfg);

DirectedCountGraph generate_hyperlink_graph(const SynthConfig& cfg);

// Writes nodes.csv, visits.csv, panel.json and edges.csv.
void write_synth_dataset(const SynthConfig& cfg, const std::string& out_dir);

} // namespace dualweb
