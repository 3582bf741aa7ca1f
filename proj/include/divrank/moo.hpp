#ifndef DIVRANK_MOO_HPP
#define DIVRANK_MOO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "divrank/kernel.hpp"
#include "divrank/quality.hpp"

namespace divrank {

// Real-vector genotype in [0,1]^N; argsort decodes it into a permutation.
using Genotype = std::vector<double>;

// Argsort ascending, ties toward the smaller index; position 0 holds the
// item with the smallest gene.
Ranking decodeRanking(const Genotype& genotype);

// Inverse embedding: the item at position p gets gene (p + 0.5) / N, so
// decode(encode(r)) == r. Used to inject greedy seeds into generation 0.
Genotype encodeRanking(const Ranking& ranking);

struct EvolveConfig {
    int popSize = 500;
    int generations = 1000;
    double pCrossover = 0.8;
    double pMutation = 0.01;
    std::uint64_t seed = 0;
    int horizon = 0; // <= 0: full list
    int threads = 1;
    bool accumulateArchive = false; // front over all generations, not just the last population
};

// One non-dominated ranking with its objective pair. Both objectives are
// minimized: fQuality = 1 - nDCG_N, fDiversity = -DivR. normQ/normD are
// min-max rescalings over the finished front.
struct FrontPoint {
    Ranking ranking;
    double fQuality = 0.0;
    double fDiversity = 0.0;
    double normQ = 0.0;
    double normD = 0.0;
};

struct FrontMetadata {
    std::uint64_t seed = 0;
    int popSize = 0;
    int generations = 0;
    double pCrossover = 0.0;
    double pMutation = 0.0;
    int horizon = 0;
    int threads = 1;
    bool accumulateArchive = false;
    std::vector<std::string> ids;       // ground-set ids, row order
    std::vector<double> qualities;      // raw qualities, row order
    std::vector<double> hypervolume;    // per-generation running-archive hypervolume
};

// Mutually non-dominated, deduplicated on objective pairs, sorted by
// ascending fQuality.
struct TradeoffFront {
    std::vector<FrontPoint> points;
    FrontMetadata metadata;
};

// NSGA-II over genotypes. Generation 0 is random except for two injected
// seeds, encode(greedyDiverseRanking) and encode(qualityRanking). Each
// generation: binary tournament on (non-domination rank, crowding distance),
// uniform crossover (per-gene swap probability 0.5) applied with probability
// pCrossover, per-gene uniform mutation with probability pMutation, then
// mu+lambda elitist survival by fast non-dominated sort and crowding
// distance. Fitness is memoized by decoded permutation; evaluation may be
// threaded, all random draws happen on the sequential path, so results are
// independent of thread count.
TradeoffFront evolveFront(const SimilarityKernel& kernel, const RelevanceVector& rel,
                          const EvolveConfig& config);

// The front point tangent to the smallest circular indifference curve around
// the utopia origin: minimal sqrt(normQ^2 + normD^2), ties toward smaller
// fQuality.
const FrontPoint& selectByIndifference(const TradeoffFront& front);

// Front JSON: {"metadata": {...}, "points": [{fQuality, fDiversity, normQ,
// normD, ranking: [ids...]}, ...]}. Round-trips exactly.
void saveFrontJson(const TradeoffFront& front, const std::string& path);
TradeoffFront loadFrontJson(const std::string& path);

// 2-D hypervolume of a minimization point set against a reference corner.
double hypervolume2d(const std::vector<std::pair<double, double>>& points,
                     double refX, double refY);

} // namespace divrank

#endif
