#include "divrank/quality.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "divrank/errors.hpp"

namespace divrank {

RelevanceVector normalizeRelevance(const std::vector<double>& qualities) {
    if (qualities.size() < 2)
        throw ValidationError("relevance normalization needs at least 2 qualities");
    const auto [minIt, maxIt] = std::minmax_element(qualities.begin(), qualities.end());
    const double lo = *minIt;
    const double hi = *maxIt;
    RelevanceVector rel(qualities.size(), 0.0);
    if (hi == lo) return rel; // all equal: neutral quality signal
    for (std::size_t i = 0; i < qualities.size(); ++i)
        rel[i] = (qualities[i] - lo) / (hi - lo);
    return rel;
}

namespace {

double gainAt(double rel, int position) {
    // position is 1-based
    return (std::exp2(rel) - 1.0) / std::log2(static_cast<double>(position) + 1.0);
}

void checkDepth(const Ranking& ranking, const RelevanceVector& rel, int k) {
    const int n = static_cast<int>(rel.size());
    if (!isPermutation(ranking, n))
        throw ValidationError("ranking is not a permutation of 0.." + std::to_string(n - 1));
    if (k < 1 || k > n)
        throw ValidationError("depth k=" + std::to_string(k) + " outside 1.." +
                              std::to_string(n));
}

} // namespace

double dcg(const Ranking& ranking, const RelevanceVector& rel, int k) {
    checkDepth(ranking, rel, k);
    double sum = 0.0;
    for (int i = 1; i <= k; ++i)
        sum += gainAt(rel[static_cast<std::size_t>(ranking[static_cast<std::size_t>(i - 1)])], i);
    return sum;
}

double ndcg(const Ranking& ranking, const RelevanceVector& rel, int k) {
    checkDepth(ranking, rel, k);
    // Ideal ordering: descending relevance, ties by ascending index. Any tie
    // order yields the same IDCG; the stable rule keeps runs reproducible.
    Ranking ideal(rel.size());
    std::iota(ideal.begin(), ideal.end(), 0);
    std::stable_sort(ideal.begin(), ideal.end(), [&](int a, int b) {
        return rel[static_cast<std::size_t>(a)] > rel[static_cast<std::size_t>(b)];
    });
    double idcg = 0.0;
    for (int i = 1; i <= k; ++i)
        idcg += gainAt(rel[static_cast<std::size_t>(ideal[static_cast<std::size_t>(i - 1)])], i);
    if (idcg == 0.0) return 1.0; // all-zero relevance: every ranking is ideal
    return dcg(ranking, rel, k) / idcg;
}

} // namespace divrank
