#pragma once

// Brute-force reference implementations the fast paths are checked against.
// Everything here recomputes from first principles (triple enumeration,
// direct double sums, flat-vector statistics) and stays independent of the
// implementation code paths under test.

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "core/graph.hpp"
#include "core/rng.hpp"

namespace oracle {

inline double density(const dualweb::WeightedGraph& g) {
    const std::size_t n = g.size();
    std::size_t ties = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (g.weight(i, j) > 0.0) ++ties;
    return static_cast<double>(ties) / (static_cast<double>(n * (n - 1)) / 2.0);
}

// average local clustering by enumerating all node triples
inline double avg_local_clustering(const dualweb::WeightedGraph& g) {
    const std::size_t n = g.size();
    double sum = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
        std::size_t deg = 0;
        for (std::size_t u = 0; u < n; ++u)
            if (u != v && g.weight(v, u) > 0.0) ++deg;
        if (deg < 2) continue;
        std::size_t closed = 0;
        for (std::size_t a = 0; a < n; ++a) {
            if (a == v || g.weight(v, a) == 0.0) continue;
            for (std::size_t b = a + 1; b < n; ++b) {
                if (b == v || g.weight(v, b) == 0.0) continue;
                if (g.weight(a, b) > 0.0) ++closed;
            }
        }
        sum += static_cast<double>(closed) / (static_cast<double>(deg) * (deg - 1) / 2.0);
    }
    return sum / static_cast<double>(n);
}

inline double transitivity(const dualweb::WeightedGraph& g) {
    const std::size_t n = g.size();
    double closed = 0.0, triples = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t a = 0; a < n; ++a) {
            if (a == v || g.weight(v, a) == 0.0) continue;
            for (std::size_t b = a + 1; b < n; ++b) {
                if (b == v || g.weight(v, b) == 0.0) continue;
                triples += 1.0;
                if (g.weight(a, b) > 0.0) closed += 1.0;
            }
        }
    }
    return triples > 0.0 ? closed / triples : 0.0;
}

// Freeman centralization straight from the degree vector
inline double freeman_centralization(const dualweb::WeightedGraph& g) {
    const std::size_t n = g.size();
    std::vector<std::size_t> deg(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (j != i && g.weight(i, j) > 0.0) ++deg[i];
    std::size_t d_max = 0;
    for (auto d : deg) d_max = std::max(d_max, d);
    double sum = 0.0;
    for (auto d : deg) sum += static_cast<double>(d_max - d);
    return sum / (static_cast<double>(n - 1) * static_cast<double>(n - 2));
}

// direct O(n^2) evaluation of the modularity double sum
inline double modularity(const dualweb::WeightedGraph& g, const std::vector<int>& assignment,
                         double resolution = 1.0) {
    const std::size_t n = g.size();
    double two_m = 0.0;
    std::vector<double> k(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            k[i] += g.weight(i, j);
        }
        two_m += k[i];
    }
    double q = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (assignment[i] != assignment[j]) continue;
            q += g.weight(i, j) - resolution * k[i] * k[j] / two_m;
        }
    }
    return q / two_m;
}

// two-pass Pearson correlation over flattened upper triangles
inline double pearson_upper(const dualweb::WeightedGraph& a, const dualweb::WeightedGraph& b) {
    std::vector<double> va, vb;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = i + 1; j < a.size(); ++j) {
            va.push_back(a.weight(i, j));
            vb.push_back(b.weight(i, j));
        }
    }
    const double n = static_cast<double>(va.size());
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < va.size(); ++i) {
        ma += va[i];
        mb += vb[i];
    }
    ma /= n;
    mb /= n;
    double cov = 0.0, sa = 0.0, sb = 0.0;
    for (std::size_t i = 0; i < va.size(); ++i) {
        cov += (va[i] - ma) * (vb[i] - mb);
        sa += (va[i] - ma) * (va[i] - ma);
        sb += (vb[i] - mb) * (vb[i] - mb);
    }
    return cov / std::sqrt(sa * sb);
}

// pair-counting adjusted Rand index (the label-matching oracle)
inline double adjusted_rand_pair_counting(const std::vector<int>& x, const std::vector<int>& y) {
    const std::size_t n = x.size();
    double n11 = 0.0, n10 = 0.0, n01 = 0.0, n00 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool same_x = x[i] == x[j];
            const bool same_y = y[i] == y[j];
            if (same_x && same_y) n11 += 1.0;
            else if (same_x) n10 += 1.0;
            else if (same_y) n01 += 1.0;
            else n00 += 1.0;
        }
    }
    const double total = n11 + n10 + n01 + n00;
    const double expected = (n11 + n10) * (n11 + n01) / total;
    const double maximum = ((n11 + n10) + (n11 + n01)) / 2.0;
    if (maximum == expected) return 1.0;
    return (n11 - expected) / (maximum - expected);
}

// seeded G(n, p) with unit weights
inline dualweb::WeightedGraph random_binary_graph(std::size_t n, double p, std::uint64_t seed) {
    dualweb::Rng rng(seed);
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < n; ++i) ids.push_back("n" + std::to_string(i));
    std::vector<double> w(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (rng.bernoulli(p)) w[i * n + j] = w[j * n + i] = 1.0;
    return dualweb::WeightedGraph(std::move(ids), std::move(w));
}

// seeded graph with positive random weights on present edges
inline dualweb::WeightedGraph random_weighted_graph(std::size_t n, double p, std::uint64_t seed) {
    dualweb::Rng rng(seed);
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < n; ++i) ids.push_back("n" + std::to_string(i));
    std::vector<double> w(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (rng.bernoulli(p)) {
                const double weight = 0.1 + rng.next_double() * 5.0;
                w[i * n + j] = w[j * n + i] = weight;
            }
        }
    }
    return dualweb::WeightedGraph(std::move(ids), std::move(w));
}

} // namespace oracle
