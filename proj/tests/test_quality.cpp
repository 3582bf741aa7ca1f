#include "doctest.h"

#include "divrank/quality.hpp"

#include <algorithm>
#include <cmath>

#include "divrank/errors.hpp"
#include "divrank/rng.hpp"
#include "test_support.hpp"

using namespace divrank;

TEST_CASE("relevance normalization") {
    CHECK(normalizeRelevance({11, 5, 3, 2, 1}) ==
          RelevanceVector{1.0, 0.4, 0.2, 0.1, 0.0});
    CHECK(normalizeRelevance({7, 7, 7}) == RelevanceVector{0, 0, 0});
    CHECK_THROWS_AS(normalizeRelevance({1}), ValidationError);

    // Affine invariance: 3q + 5 normalizes to the same vector.
    const std::vector<double> q = {4, 9, 1, 6, 6};
    std::vector<double> affine;
    for (double v : q) affine.push_back(3 * v + 5);
    const RelevanceVector a = normalizeRelevance(q);
    const RelevanceVector b = normalizeRelevance(affine);
    for (std::size_t i = 0; i < q.size(); ++i)
        CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12));
}

TEST_CASE("worked DCG/nDCG lists") {
    const RelevanceVector rel = normalizeRelevance({11, 5, 3, 2, 1});
    const Ranking list1 = {0, 1, 2, 4, 3};
    const Ranking list2 = {3, 0, 1, 2, 4};

    CHECK(dcg(list1, rel, 5) == doctest::Approx(1.304).epsilon(0.002));
    CHECK(dcg(list2, rel, 5) == doctest::Approx(0.927).epsilon(0.002));
    CHECK(ndcg(list1, rel, 5) == doctest::Approx(0.998).epsilon(0.002));
    CHECK(ndcg(list2, rel, 5) == doctest::Approx(0.709).epsilon(0.002));
}

TEST_CASE("degenerate relevance conventions") {
    const RelevanceVector zero = {0, 0, 0, 0};
    const Ranking any = {2, 0, 3, 1};
    CHECK(dcg(any, zero, 4) == 0.0);
    CHECK(ndcg(any, zero, 4) == 1.0); // all-zero relevance: every ranking ideal
}

TEST_CASE("ideal ranking scores exactly 1") {
    const RelevanceVector rel = normalizeRelevance({3, 9, 4, 8, 1, 5});
    Ranking ideal(rel.size());
    for (std::size_t i = 0; i < rel.size(); ++i) ideal[i] = static_cast<int>(i);
    std::stable_sort(ideal.begin(), ideal.end(),
                     [&](int a, int b) { return rel[a] > rel[b]; });
    CHECK(ndcg(ideal, rel, 6) == 1.0);
    CHECK(ndcg(ideal, rel, 3) == 1.0);
}

TEST_CASE("depth validation") {
    const RelevanceVector rel = {1, 0.5, 0};
    const Ranking r = {0, 1, 2};
    CHECK_THROWS_AS(dcg(r, rel, 0), ValidationError);
    CHECK_THROWS_AS(dcg(r, rel, 4), ValidationError);
    CHECK_THROWS_AS(ndcg({0, 1}, rel, 2), ValidationError); // not a permutation of N
}

TEST_CASE("nDCG is 1 exactly when relevance is non-increasing along the ranking") {
    Rng rng(4242);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 3 + rng.belowInt(6);
        std::vector<double> qualities;
        for (int i = 0; i < n; ++i)
            qualities.push_back(static_cast<double>(rng.belowInt(4))); // ties likely
        const RelevanceVector rel = normalizeRelevance(qualities);

        Ranking ranking(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) ranking[static_cast<std::size_t>(i)] = i;
        for (int i = n - 1; i > 0; --i)
            std::swap(ranking[static_cast<std::size_t>(i)],
                      ranking[static_cast<std::size_t>(rng.belowInt(i + 1))]);

        const double value = ndcg(ranking, rel, n);
        CAPTURE(trial);
        CHECK(value >= 0.0);
        CHECK(value <= 1.0 + 1e-12);

        bool sorted = true;
        for (int i = 0; i + 1 < n; ++i)
            if (rel[static_cast<std::size_t>(ranking[static_cast<std::size_t>(i)])] <
                rel[static_cast<std::size_t>(ranking[static_cast<std::size_t>(i + 1)])])
                sorted = false;
        if (sorted)
            CHECK(value == doctest::Approx(1.0).epsilon(1e-12));
        else
            CHECK(value < 1.0);
    }
}
