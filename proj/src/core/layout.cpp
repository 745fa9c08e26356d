#include "core/layout.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "core/error.hpp"
#include "core/fileio.hpp"
#include "core/rng.hpp"

namespace dualweb {

std::array<double, 2> LayoutResult::position_of(const std::string& node_id) const {
    for (std::size_t i = 0; i < node_ids.size(); ++i)
        if (node_ids[i] == node_id) return positions[i];
    throw_invalid("layout has no position for node " + node_id);
}

LayoutResult LayoutResult::load_json(const std::string& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_text_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw_parse(path + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("positions")) {
        throw_parse(path + ": expected an object with 'positions'");
    }
    LayoutResult layout;
    for (const auto& [id, xy] : j.at("positions").items()) {
        if (!xy.is_array() || xy.size() != 2) throw_parse(path + ": positions must be [x,y] pairs");
        layout.node_ids.push_back(id);
        layout.positions.push_back({xy[0].get<double>(), xy[1].get<double>()});
    }
    layout.iterations = j.value("iterations", 0);
    layout.seed = j.value("seed", std::uint64_t{0});
    const auto frame = j.value("frame", std::vector<double>{0.0, 0.0});
    if (frame.size() == 2) {
        layout.width = frame[0];
        layout.height = frame[1];
    }
    return layout;
}

void LayoutResult::save_json(const std::string& path) const {
    nlohmann::json positions_json = nlohmann::json::object();
    for (std::size_t i = 0; i < node_ids.size(); ++i) {
        positions_json[node_ids[i]] = {positions[i][0], positions[i][1]};
    }
    nlohmann::json j;
    j["positions"] = std::move(positions_json);
    j["iterations"] = iterations;
    j["seed"] = seed;
    j["frame"] = {width, height};
    write_text_file(path, j.dump(2) + "\n");
}

LayoutResult fr_layout(const WeightedGraph& g, int iterations, std::uint64_t seed, double width,
                       double height) {
    const std::size_t n = g.size();
    if (n == 0) throw_invalid("cannot lay out an empty graph");
    if (iterations < 0 || width <= 0.0 || height <= 0.0) {
        throw_invalid("layout requires iterations >= 0 and a positive frame");
    }

    LayoutResult out;
    out.node_ids = g.node_ids();
    out.iterations = iterations;
    out.seed = seed;
    out.width = width;
    out.height = height;

    if (n == 1) {
        out.positions = {{width / 2.0, height / 2.0}};
        return out;
    }

    Rng rng(derive_seed(seed, 0x4c61796f75ULL));
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = rng.next_double() * width;
        y[i] = rng.next_double() * height;
    }

    const double area = width * height;
    const double k = std::sqrt(area / static_cast<double>(n));
    const double k2 = k * k;
    const double w_max = g.max_weight();
    const double t0 = width / 10.0;

    std::vector<double> dx(n), dy(n);
    for (int iter = 0; iter < iterations; ++iter) {
        std::fill(dx.begin(), dx.end(), 0.0);
        std::fill(dy.begin(), dy.end(), 0.0);

        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                double ddx = x[i] - x[j];
                double ddy = y[i] - y[j];
                double dist = std::sqrt(ddx * ddx + ddy * ddy);
                if (dist < 1e-9) {
                    // nudge coincident nodes apart along a deterministic direction
                    const double angle = 6.283185307179586 *
                                         (static_cast<double>((i * 2654435761u + j) % 1000) / 1000.0);
                    ddx = std::cos(angle) * 1e-9;
                    ddy = std::sin(angle) * 1e-9;
                    dist = 1e-9;
                }
                const double repulse = k2 / dist;
                dx[i] += ddx / dist * repulse;
                dy[i] += ddy / dist * repulse;
                dx[j] -= ddx / dist * repulse;
                dy[j] -= ddy / dist * repulse;

                const double w = g.weight(i, j);
                if (w > 0.0 && w_max > 0.0) {
                    const double attract = dist * dist / k * (w / w_max);
                    dx[i] -= ddx / dist * attract;
                    dy[i] -= ddy / dist * attract;
                    dx[j] += ddx / dist * attract;
                    dy[j] += ddy / dist * attract;
                }
            }
        }

        const double t = t0 * (1.0 - static_cast<double>(iter) / static_cast<double>(iterations));
        for (std::size_t i = 0; i < n; ++i) {
            const double len = std::sqrt(dx[i] * dx[i] + dy[i] * dy[i]);
            if (len > 0.0) {
                const double capped = std::min(len, t);
                x[i] += dx[i] / len * capped;
                y[i] += dy[i] / len * capped;
            }
            x[i] = std::clamp(x[i], 0.0, width);
            y[i] = std::clamp(y[i], 0.0, height);
        }
    }

    out.positions.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.positions[i] = {x[i], y[i]};
    return out;
}

} // namespace dualweb
