#include "core/qap.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <json.hpp>

#include "core/error.hpp"
#include "core/parallel.hpp"
#include "core/rng.hpp"

namespace dualweb {

QapTail qap_tail_from_string(const std::string& name) {
    if (name == "two_sided" || name == "two-sided") return QapTail::TwoSided;
    if (name == "greater") return QapTail::Greater;
    if (name == "less") return QapTail::Less;
    throw_invalid("unknown tail '" + name + "' (expected two_sided, greater or less)");
}

WeightTransform weight_transform_from_string(const std::string& name) {
    if (name == "none") return WeightTransform::None;
    if (name == "log1p") return WeightTransform::Log1p;
    if (name == "rank") return WeightTransform::Rank;
    throw_invalid("unknown transform '" + name + "' (expected none, log1p or rank)");
}

std::string to_string(QapTail tail) {
    switch (tail) {
        case QapTail::TwoSided: return "two_sided";
        case QapTail::Greater: return "greater";
        case QapTail::Less: return "less";
    }
    return "two_sided";
}

WeightedGraph transform_weights(const WeightedGraph& g, WeightTransform transform) {
    if (transform == WeightTransform::None) return g;
    const std::size_t n = g.size();
    std::vector<double> weights(n * n, 0.0);
    if (transform == WeightTransform::Log1p) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) weights[i * n + j] = std::log1p(g.weight(i, j));
        return WeightedGraph(g.node_ids(), std::move(weights));
    }
    // rank transform: average ranks (1-based) of the upper-triangle values,
    // mirrored back symmetrically
    std::vector<std::pair<double, std::pair<std::size_t, std::size_t>>> cells;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) cells.push_back({g.weight(i, j), {i, j}});
    std::sort(cells.begin(), cells.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::size_t k = 0;
    while (k < cells.size()) {
        std::size_t end = k;
        while (end < cells.size() && cells[end].first == cells[k].first) ++end;
        const double avg_rank = (static_cast<double>(k) + static_cast<double>(end - 1)) / 2.0 + 1.0;
        for (std::size_t t = k; t < end; ++t) {
            const auto [i, j] = cells[t].second;
            weights[i * n + j] = weights[j * n + i] = avg_rank;
        }
        k = end;
    }
    return WeightedGraph(g.node_ids(), std::move(weights));
}

namespace {

struct PairSums {
    std::vector<double> a_upper; // upper-triangle cells of a, row-major
    double sum_a = 0.0, sum_aa = 0.0, sum_b = 0.0, sum_bb = 0.0;
    double n_cells = 0.0;
    double var_a = 0.0, var_b = 0.0; // n*sum_sq - sum^2 form
    double denom = 0.0;              // sqrt(var_a)*sqrt(var_b), > 0
};

// The multiset of b's upper-triangle values is invariant under joint row and
// column relabeling, so every moment except sum(a*b) can be precomputed.
PairSums prepare(const WeightedGraph& a, const WeightedGraph& b) {
    if (a.node_ids() != b.node_ids()) {
        throw_invalid("matrix correlation requires identical node sets and ordering; align first");
    }
    const std::size_t n = a.size();
    if (n < 2) throw_invalid("matrix correlation requires at least 2 nodes");
    PairSums s;
    s.a_upper.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double va = a.weight(i, j);
            const double vb = b.weight(i, j);
            s.a_upper.push_back(va);
            s.sum_a += va;
            s.sum_aa += va * va;
            s.sum_b += vb;
            s.sum_bb += vb * vb;
        }
    }
    s.n_cells = static_cast<double>(s.a_upper.size());
    s.var_a = s.n_cells * s.sum_aa - s.sum_a * s.sum_a;
    s.var_b = s.n_cells * s.sum_bb - s.sum_b * s.sum_b;
    if (s.var_a <= 0.0 || s.var_b <= 0.0) {
        throw_domain("matrix correlation undefined: a matrix has zero variance");
    }
    s.denom = std::sqrt(s.var_a) * std::sqrt(s.var_b);
    return s;
}

double pearson_for_permutation(const PairSums& s, const WeightedGraph& a, const WeightedGraph& b,
                               const std::vector<std::size_t>& perm) {
    const std::size_t n = a.size();
    double sum_ab = 0.0;
    std::size_t cell = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            sum_ab += s.a_upper[cell++] * b.weight(perm[i], perm[j]);
        }
    }
    const double num = s.n_cells * sum_ab - s.sum_a * s.sum_b;
    // covariance equal to both variances means r is exactly +-1; computing
    // num / (sqrt(v)*sqrt(v)) would miss 1.0 by an ulp
    if (s.var_a == s.var_b) {
        if (num == s.var_a) return 1.0;
        if (num == -s.var_a) return -1.0;
    }
    return std::clamp(num / s.denom, -1.0, 1.0);
}

bool is_hit(double r_perm, double r_obs, QapTail tail) {
    switch (tail) {
        case QapTail::TwoSided: return std::abs(r_perm) >= std::abs(r_obs);
        case QapTail::Greater: return r_perm >= r_obs;
        case QapTail::Less: return r_perm <= r_obs;
    }
    return false;
}

constexpr std::size_t kExhaustiveLimit = 50000; // n! cap; n <= 8

std::size_t factorial_capped(std::size_t n) {
    std::size_t f = 1;
    for (std::size_t i = 2; i <= n; ++i) {
        if (f > kExhaustiveLimit) return kExhaustiveLimit + 1;
        f *= i;
    }
    return f;
}

} // namespace

double matrix_pearson(const WeightedGraph& a, const WeightedGraph& b) {
    const PairSums s = prepare(a, b);
    std::vector<std::size_t> identity(a.size());
    std::iota(identity.begin(), identity.end(), std::size_t{0});
    return pearson_for_permutation(s, a, b, identity);
}

QapResult qap_correlation(const WeightedGraph& a, const WeightedGraph& b,
                          std::size_t n_permutations, std::uint64_t seed, QapTail tail,
                          QapMode mode, unsigned n_threads) {
    if (n_permutations < 1) throw_invalid("n_permutations must be >= 1");
    const PairSums s = prepare(a, b);
    const std::size_t n = a.size();

    QapResult result;
    result.seed = seed;
    result.n_nodes = n;
    result.tail = tail;

    std::vector<std::size_t> identity(n);
    std::iota(identity.begin(), identity.end(), std::size_t{0});
    result.r_observed = pearson_for_permutation(s, a, b, identity);

    const std::size_t n_factorial = factorial_capped(n);
    const bool exhaustive =
        mode == QapMode::Exhaustive || (mode == QapMode::Auto && n_factorial <= kExhaustiveLimit);
    result.exhaustive = exhaustive;

    std::size_t hits = 0;
    if (exhaustive) {
        // all n! - 1 non-identity relabelings; with the +1 smoothing the p
        // below equals the exact count over all n! relabelings
        if (n_factorial > kExhaustiveLimit) {
            throw_invalid("exhaustive enumeration requested for n with n! > 50000");
        }
        result.permutation_stats.reserve(n_factorial - 1);
        std::vector<std::size_t> perm = identity;
        while (std::next_permutation(perm.begin(), perm.end())) {
            const double r = pearson_for_permutation(s, a, b, perm);
            result.permutation_stats.push_back(r);
            if (is_hit(r, result.r_observed, tail)) ++hits;
        }
        result.n_permutations = result.permutation_stats.size();
    } else {
        result.permutation_stats.assign(n_permutations, 0.0);
        // each permutation index owns a derived RNG stream; identity draws
        // are rejected and redrawn
        parallel_for(n_permutations, n_threads, [&](std::size_t begin, std::size_t end) {
            for (std::size_t k = begin; k < end; ++k) {
                Rng rng(derive_seed(seed, k));
                std::vector<std::size_t> perm = identity;
                do {
                    rng.shuffle(perm);
                } while (perm == identity);
                result.permutation_stats[k] = pearson_for_permutation(s, a, b, perm);
            }
        });
        result.n_permutations = n_permutations;
        for (double r : result.permutation_stats) {
            if (is_hit(r, result.r_observed, tail)) ++hits;
        }
    }
    result.p_value = static_cast<double>(1 + hits) / static_cast<double>(1 + result.n_permutations);
    return result;
}

std::string QapResult::to_json_string() const {
    nlohmann::json j;
    j["r_observed"] = r_observed;
    j["p_value"] = p_value;
    j["n_permutations"] = n_permutations;
    j["seed"] = seed;
    j["n_nodes"] = n_nodes;
    j["tail"] = to_string(tail);
    j["method"] = exhaustive ? "exhaustive" : "monte_carlo";
    return j.dump(2) + "\n";
}

} // namespace dualweb
