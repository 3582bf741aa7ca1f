#ifndef DIVRANK_RANKING_HPP
#define DIVRANK_RANKING_HPP

#include <cstdint>
#include <vector>

#include "divrank/diversity.hpp"
#include "divrank/quality.hpp"

namespace divrank {

// Greedy determinant-maximizing ranking. Seeds with the minimum off-diagonal
// pair (the det-optimal 2-subset for non-negative kernels), then repeatedly
// appends the item with the largest incremental Cholesky pivot. Once every
// remaining candidate's pivot sits at the floor the determinant can no longer
// discriminate, and the tail is appended by descending relevance when one is
// supplied, ascending index otherwise. All ties break toward the smaller
// index so results are reproducible across platforms.
Ranking greedyDiverseRanking(const SimilarityKernel& kernel,
                             const RelevanceVector* relevance = nullptr);

// Descending quality, stable: ties keep ascending index order.
Ranking qualityRanking(const std::vector<double>& qualities);

// Maximal marginal relevance: repeatedly append
//   argmax_i  lambda * rel_i - (1 - lambda) * max_{j selected} L_ij,
// ties toward the smaller index. lambda = 1 reduces to the quality sort,
// lambda = 0 to pure dissimilarity.
Ranking mmrRanking(const SimilarityKernel& kernel, const RelevanceVector& rel, double lambda);

// n independent uniform permutations of 0..N-1 via seeded Fisher-Yates.
std::vector<Ranking> randomRankings(int n, int itemCount, std::uint64_t seed);

// Ranking CSV: "rank,id,quality[,prefix_det]"; rank is 1-based, prefix_det is
// the determinant of the prefix ending at that row and is written only when a
// kernel is supplied. Null qualities are written as 0.
void saveRankingCsv(const Ranking& ranking, const std::vector<std::string>& ids,
                    const std::vector<double>* qualities, const SimilarityKernel* kernel,
                    const std::string& path);

// Reads the id column back and maps it onto the given id order.
Ranking loadRankingCsv(const std::string& path, const std::vector<std::string>& ids);

} // namespace divrank

#endif
