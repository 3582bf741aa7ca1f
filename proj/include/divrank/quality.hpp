#ifndef DIVRANK_QUALITY_HPP
#define DIVRANK_QUALITY_HPP

#include <vector>

#include "divrank/diversity.hpp"

namespace divrank {

using RelevanceVector = std::vector<double>;

// rel_i = (q_i - min) / (max - min). All-equal inputs map to all zeros, which
// keeps the quality objective neutral and lets diversity dominate.
RelevanceVector normalizeRelevance(const std::vector<double>& qualities);

// DCG_k = sum_{i=1}^{k} (2^{rel at position i} - 1) / log2(i + 1).
double dcg(const Ranking& ranking, const RelevanceVector& rel, int k);

// DCG_k / IDCG_k with the ideal ranking sorted by descending relevance.
// When IDCG is 0 (all-zero relevance) every ranking is ideal: returns 1.
double ndcg(const Ranking& ranking, const RelevanceVector& rel, int k);

} // namespace divrank

#endif
