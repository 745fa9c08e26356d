#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/graph.hpp"

namespace dualweb {

enum class QapTail { TwoSided, Greater, Less };
enum class QapMode { Auto, Exhaustive, MonteCarlo };
enum class WeightTransform { None, Log1p, Rank };

QapTail qap_tail_from_string(const std::string& name);
WeightTransform weight_transform_from_string(const std::string& name);
std::string to_string(QapTail tail);

// Elementwise value transform of the weight matrix (for correlation on
// transformed values; tie semantics are not preserved by Rank).
WeightedGraph transform_weights(const WeightedGraph& g, WeightTransform transform);

// Pearson correlation over the n(n-1)/2 upper-triangle cells of two graphs
// with identical node lists. Errors when either matrix has zero variance.
double matrix_pearson(const WeightedGraph& a, const WeightedGraph& b);

struct QapResult {
    double r_observed = 0.0;
    std::size_t n_permutations = 0; // non-identity relabelings evaluated
    double p_value = 1.0;           // (1 + hits) / (1 + n_permutations)
    std::uint64_t seed = 0;
    std::size_t n_nodes = 0;
    QapTail tail = QapTail::TwoSided;
    bool exhaustive = false;
    std::vector<double> permutation_stats; // per-permutation r, kept for diagnostics

    std::string to_json_string() const; // permutation_stats not serialized
};

// QAP correlation: jointly relabel b's rows and columns per permutation and
// recompute r. Auto mode enumerates all n! relabelings when n! <= 50000
// (n <= 8) and draws Monte Carlo permutations otherwise; the identity is
// excluded from draws and represented by the +1 smoothing term, which makes
// the Monte Carlo p formula reproduce the exact exhaustive p. Deterministic
// given the seed: each permutation index derives its own RNG stream, so the
// result is independent of the worker count.
QapResult qap_correlation(const WeightedGraph& a, const WeightedGraph& b,
                          std::size_t n_permutations = 1000, std::uint64_t seed = 0,
                          QapTail tail = QapTail::TwoSided, QapMode mode = QapMode::Auto,
                          unsigned n_threads = 0);

} // namespace dualweb
