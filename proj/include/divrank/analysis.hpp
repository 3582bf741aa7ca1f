#ifndef DIVRANK_ANALYSIS_HPP
#define DIVRANK_ANALYSIS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "divrank/clustering.hpp"
#include "divrank/moo.hpp"

namespace divrank {

// det(L_{prefix k}) for k = 1..maxK, one incremental factorization pass.
// Values are in [0, 1] and non-increasing; once a pivot floors, the rest of
// the curve reports 0.
std::vector<double> detCurve(const Ranking& ranking, const SimilarityKernel& kernel, int maxK);

// Per-depth percentiles of det(L_{prefix k}) over seeded random permutations.
// curves[p][k-1] holds percentile p's value at depth k. Percentiles use the
// linear-interpolation definition: rank = p/100 * (n-1) on the sorted sample.
struct PercentileBand {
    std::vector<double> percentiles;
    std::vector<std::vector<double>> curves;
    // First depth k (1-based) where the top percentile drops below 1e-6, or 0
    // if it never does: the point past which diversity stops discriminating.
    int collapseDepth = 0;
};
PercentileBand percentileBand(const SimilarityKernel& kernel, int nSamples,
                              std::vector<double> percentiles, std::uint64_t seed, int maxK);

// Union and per-id frequency of the top-k prefixes across front rankings.
struct PersistenceReport {
    std::vector<int> uniqueItems;          // ascending indices
    std::vector<double> frequency;         // aligned to uniqueItems, in (0, 1]
    double compressionRatio = 0.0;         // |unique| / N
};
PersistenceReport topKPersistence(const TradeoffFront& front, int k);

// One diversity scorer entered in the agreement experiment: the DPP
// log-determinant, or cluster coverage under a supplied partition.
struct AgreementMethod {
    std::string name;
    bool useDpp = false;
    ClusterPartition partition; // ignored when useDpp
};

// For each set size: sample 1000 index sets, pair sample t with sample
// 500 + t, take the higher-Shannon-entropy side (under the gold partition) as
// ground truth, and record how often each method ranks the pair the same way.
// Entropy ties are resampled rather than scored.
struct AgreementResult {
    std::vector<std::string> methods;
    std::vector<int> sizes;
    std::vector<std::vector<double>> agreement; // [method][size index]
};
AgreementResult agreementExperiment(const SimilarityKernel& kernel,
                                    const ClusterPartition& goldLabels,
                                    const std::vector<AgreementMethod>& methods,
                                    int sizeMin, int sizeMax, int trialsPerSize,
                                    std::uint64_t seed);

} // namespace divrank

#endif
