#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "core/graph.hpp"

namespace dualweb {

struct LayoutResult {
    std::vector<std::string> node_ids;
    std::vector<std::array<double, 2>> positions; // within [0,width] x [0,height]
    int iterations = 0;
    std::uint64_t seed = 0;
    double width = 0.0;
    double height = 0.0;

    std::array<double, 2> position_of(const std::string& node_id) const;

    static LayoutResult load_json(const std::string& path);
    void save_json(const std::string& path) const;
};

// Classic Fruchterman-Reingold: ideal length k = sqrt(area/n), repulsion
// k^2/d between all pairs, attraction d^2/k along ties scaled by weight
// relative to the maximum weight, linear cooling to zero. Positions stay
// inside the frame. Bit-for-bit deterministic per seed; a single node sits
// at the frame center.
LayoutResult fr_layout(const WeightedGraph& g, int iterations = 500, std::uint64_t seed = 0,
                       double width = 1000.0, double height = 1000.0);

} // namespace dualweb
