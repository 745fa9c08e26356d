#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "core/error.hpp"
#include "core/qap.hpp"
#include "core/rng.hpp"
#include "support/oracles.hpp"

using namespace dualweb;

namespace {

WeightedGraph relabeled(const WeightedGraph& g, const std::vector<std::size_t>& perm) {
    const std::size_t n = g.size();
    std::vector<std::string> ids(n);
    std::vector<double> w(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        ids[perm[i]] = g.node_id(i);
        for (std::size_t j = 0; j < n; ++j) w[perm[i] * n + perm[j]] = g.weight(i, j);
    }
    return WeightedGraph(std::move(ids), std::move(w));
}

// exhaustive QAP by explicit relabeling, fully independent of the library's
// precomputed-sums path
double brute_force_exhaustive_p(const WeightedGraph& a, const WeightedGraph& b, QapTail tail) {
    const std::size_t n = a.size();
    const double r_obs = oracle::pearson_upper(a, b);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::size_t hits = 0, total = 0;
    do {
        // permuted b: value at (i,j) read from (perm[i], perm[j])
        std::vector<double> w(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) w[i * n + j] = b.weight(perm[i], perm[j]);
        const WeightedGraph permuted(a.node_ids(), std::move(w));
        const double r = oracle::pearson_upper(a, permuted);
        ++total;
        const bool hit = tail == QapTail::TwoSided ? std::abs(r) >= std::abs(r_obs)
                         : tail == QapTail::Greater ? r >= r_obs
                                                    : r <= r_obs;
        if (hit) ++hits;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return static_cast<double>(hits) / static_cast<double>(total);
}

} // namespace

TEST_CASE("pearson: self correlation is exactly 1") {
    const WeightedGraph g = oracle::random_weighted_graph(8, 0.5, 3);
    CHECK(matrix_pearson(g, g) == 1.0);
}

TEST_CASE("pearson: affine negative image correlates at -1") {
    const WeightedGraph g = oracle::random_weighted_graph(6, 0.6, 5);
    const double c = g.max_weight() + 1.0;
    std::vector<double> w(g.size() * g.size(), 0.0);
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j)
            if (i != j) w[i * g.size() + j] = c - g.weight(i, j);
    const WeightedGraph negated(g.node_ids(), std::move(w));
    CHECK(matrix_pearson(g, negated) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("pearson matches the flat-vector oracle") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const WeightedGraph a = oracle::random_weighted_graph(6, 0.5, seed);
        const WeightedGraph b = oracle::random_weighted_graph(6, 0.5, seed + 100);
        if (a.tie_count() == 0 || b.tie_count() == 0) continue;
        CHECK(matrix_pearson(a, b) ==
              doctest::Approx(oracle::pearson_upper(a, b)).epsilon(1e-12));
    }
}

TEST_CASE("pearson errors: zero variance and misaligned node sets") {
    const WeightedGraph flat = WeightedGraph::zeros({"a", "b", "c"});
    const WeightedGraph g({"a", "b", "c"}, {0, 1, 0, 1, 0, 1, 0, 1, 0});
    CHECK_THROWS_AS(matrix_pearson(flat, g), Error);
    const WeightedGraph other({"x", "y", "z"}, {0, 1, 0, 1, 0, 1, 0, 1, 0});
    CHECK_THROWS_AS(matrix_pearson(g, other), Error);
}

TEST_CASE("exhaustive p equals brute-force enumeration over all 4! relabelings") {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const WeightedGraph a = oracle::random_weighted_graph(4, 0.7, seed + 10);
        const WeightedGraph b = oracle::random_weighted_graph(4, 0.7, seed + 200);
        if (a.tie_count() < 2 || b.tie_count() < 2) continue;
        const QapResult result = qap_correlation(a, b, 1000, 1, QapTail::TwoSided, QapMode::Auto);
        CHECK(result.exhaustive); // 4! = 24 <= 50000 so auto enumerates
        CHECK(result.n_permutations == 23);
        CHECK(result.p_value ==
              doctest::Approx(brute_force_exhaustive_p(a, b, QapTail::TwoSided)).epsilon(1e-12));
    }
}

TEST_CASE("identical matrices: r is 1 and p is the smallest achievable") {
    const WeightedGraph g = oracle::random_weighted_graph(6, 0.5, 8);
    const QapResult result = qap_correlation(g, g, 500, 3);
    CHECK(result.r_observed == 1.0);
    // only permutations reproducing r = 1 count; at minimum the +1 identity term
    const double floor_p = 1.0 / static_cast<double>(1 + result.n_permutations);
    CHECK(result.p_value >= floor_p);
    CHECK(result.p_value <= 5 * floor_p); // automorphisms are rare in a random graph
}

TEST_CASE("monte carlo agrees with exhaustive within the binomial CI") {
    for (std::size_t n : {5, 7}) {
        const WeightedGraph a = oracle::random_weighted_graph(n, 0.6, 21 + n);
        const WeightedGraph b = oracle::random_weighted_graph(n, 0.6, 91 + n);
        const QapResult exact = qap_correlation(a, b, 1, 0, QapTail::TwoSided, QapMode::Exhaustive);
        const std::size_t draws = 10000;
        const QapResult mc =
            qap_correlation(a, b, draws, 7, QapTail::TwoSided, QapMode::MonteCarlo);
        const double half_width =
            2.576 * std::sqrt(exact.p_value * (1.0 - exact.p_value) / static_cast<double>(draws));
        // identity exclusion and +1 smoothing shift the estimate by at most
        // (1-p)/(n!-1) and 1/(draws+1) respectively
        const double slack =
            1.0 / static_cast<double>(exact.n_permutations) + 1.0 / static_cast<double>(draws + 1);
        CHECK(std::abs(mc.p_value - exact.p_value) <= half_width + slack);
    }
}

TEST_CASE("r is invariant when both matrices are relabeled together") {
    const WeightedGraph a = oracle::random_weighted_graph(9, 0.4, 31);
    const WeightedGraph b = oracle::random_weighted_graph(9, 0.4, 77);
    const double r = matrix_pearson(a, b);
    Rng rng(5);
    const auto perm = shuffled_indices(9, rng);
    CHECK(matrix_pearson(relabeled(a, perm), relabeled(b, perm)) ==
          doctest::Approx(r).epsilon(1e-12));
}

TEST_CASE("permutation distribution of r centers near zero") {
    const WeightedGraph a = oracle::random_weighted_graph(12, 0.5, 41);
    const WeightedGraph b = oracle::random_weighted_graph(12, 0.5, 43);
    const QapResult result =
        qap_correlation(a, b, 2000, 11, QapTail::TwoSided, QapMode::MonteCarlo);
    double mean = 0.0;
    for (double r : result.permutation_stats) mean += r;
    mean /= static_cast<double>(result.permutation_stats.size());
    double var = 0.0;
    for (double r : result.permutation_stats) var += (r - mean) * (r - mean);
    var /= static_cast<double>(result.permutation_stats.size() - 1);
    const double se = std::sqrt(var / static_cast<double>(result.permutation_stats.size()));
    CHECK(std::abs(mean) <= 3.0 * se);
}

TEST_CASE("qap is deterministic and independent of the worker count") {
    const WeightedGraph a = oracle::random_weighted_graph(10, 0.5, 51);
    const WeightedGraph b = oracle::random_weighted_graph(10, 0.5, 53);
    const QapResult r1 = qap_correlation(a, b, 400, 9, QapTail::TwoSided, QapMode::MonteCarlo, 1);
    const QapResult r2 = qap_correlation(a, b, 400, 9, QapTail::TwoSided, QapMode::MonteCarlo, 8);
    CHECK(r1.p_value == r2.p_value);
    CHECK(r1.permutation_stats == r2.permutation_stats);
}

TEST_CASE("tails order p values sensibly") {
    const WeightedGraph a = oracle::random_weighted_graph(6, 0.6, 61);
    const WeightedGraph b = oracle::random_weighted_graph(6, 0.6, 63);
    const QapResult greater = qap_correlation(a, b, 100, 2, QapTail::Greater);
    const QapResult less = qap_correlation(a, b, 100, 2, QapTail::Less);
    const QapResult two = qap_correlation(a, b, 100, 2, QapTail::TwoSided);
    // every permutation lands in at least one of the single tails
    CHECK(greater.p_value + less.p_value >= 1.0);
    CHECK(two.p_value > 0.0);
    CHECK(qap_tail_from_string("greater") == QapTail::Greater);
    CHECK_THROWS_AS(qap_tail_from_string("sideways"), Error);
}

TEST_CASE("weight transforms: log1p and rank") {
    const WeightedGraph g({"a", "b", "c"}, {0, 3, 0, 3, 0, 8, 0, 8, 0});
    const WeightedGraph logd = transform_weights(g, WeightTransform::Log1p);
    CHECK(logd.weight(0, 1) == doctest::Approx(std::log1p(3.0)));
    CHECK(logd.weight(0, 2) == 0.0);

    const WeightedGraph ranked = transform_weights(g, WeightTransform::Rank);
    CHECK(ranked.weight(0, 2) == 1.0); // the single zero cell ranks first
    CHECK(ranked.weight(0, 1) == 2.0);
    CHECK(ranked.weight(1, 2) == 3.0);

    const WeightedGraph tied({"a", "b", "c"}, {0, 5, 5, 5, 0, 5, 5, 5, 0});
    const WeightedGraph tied_ranks = transform_weights(tied, WeightTransform::Rank);
    CHECK(tied_ranks.weight(0, 1) == 2.0); // average rank of a full tie group
    CHECK(transform_weights(g, WeightTransform::None).weights() == g.weights());
    CHECK(weight_transform_from_string("rank") == WeightTransform::Rank);
}
