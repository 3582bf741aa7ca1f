#include "divrank/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "divrank/errors.hpp"
#include "divrank/ranking.hpp"
#include "divrank/rng.hpp"

namespace divrank {

std::vector<double> detCurve(const Ranking& ranking, const SimilarityKernel& kernel, int maxK) {
    const int n = kernel.size();
    if (!isPermutation(ranking, n))
        throw ValidationError("ranking is not a permutation of 0.." + std::to_string(n - 1));
    if (maxK < 1 || maxK > n)
        throw ValidationError("maxK=" + std::to_string(maxK) + " outside 1.." + std::to_string(n));
    PrefixCholesky chol(kernel);
    std::vector<double> curve(static_cast<std::size_t>(maxK));
    for (int k = 1; k <= maxK; ++k) {
        chol.append(ranking[static_cast<std::size_t>(k) - 1]);
        curve[static_cast<std::size_t>(k) - 1] = chol.floored() ? 0.0 : std::exp(chol.logDet());
    }
    return curve;
}

namespace {

// Linear-interpolation percentile on a sorted sample: rank = p/100 * (n-1).
double percentileOfSorted(const std::vector<double>& sorted, double p) {
    const std::size_t n = sorted.size();
    if (n == 1) return sorted[0];
    const double rank = p / 100.0 * static_cast<double>(n - 1);
    const std::size_t lo = static_cast<std::size_t>(rank);
    if (lo + 1 >= n) return sorted[n - 1];
    const double frac = rank - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

} // namespace

PercentileBand percentileBand(const SimilarityKernel& kernel, int nSamples,
                              std::vector<double> percentiles, std::uint64_t seed, int maxK) {
    const int n = kernel.size();
    if (nSamples < 100) throw ValidationError("percentile band needs at least 100 samples");
    if (maxK < 1 || maxK > n)
        throw ValidationError("maxK=" + std::to_string(maxK) + " outside 1.." + std::to_string(n));
    if (percentiles.empty()) throw ValidationError("no percentiles requested");
    for (double p : percentiles)
        if (!(p >= 0.0 && p <= 100.0))
            throw ValidationError("percentile outside [0, 100]");

    const auto rankings = randomRankings(nSamples, n, seed);
    // samplesAt[k-1][s] = det of sample s's depth-k prefix
    std::vector<std::vector<double>> samplesAt(
        static_cast<std::size_t>(maxK),
        std::vector<double>(static_cast<std::size_t>(nSamples)));
    for (int s = 0; s < nSamples; ++s) {
        const auto curve = detCurve(rankings[static_cast<std::size_t>(s)], kernel, maxK);
        for (int k = 0; k < maxK; ++k)
            samplesAt[static_cast<std::size_t>(k)][static_cast<std::size_t>(s)] =
                curve[static_cast<std::size_t>(k)];
    }

    PercentileBand band;
    band.percentiles = std::move(percentiles);
    band.curves.assign(band.percentiles.size(),
                       std::vector<double>(static_cast<std::size_t>(maxK)));
    for (int k = 0; k < maxK; ++k) {
        auto& column = samplesAt[static_cast<std::size_t>(k)];
        std::sort(column.begin(), column.end());
        for (std::size_t p = 0; p < band.percentiles.size(); ++p)
            band.curves[p][static_cast<std::size_t>(k)] =
                percentileOfSorted(column, band.percentiles[p]);
    }

    const std::size_t top = static_cast<std::size_t>(
        std::max_element(band.percentiles.begin(), band.percentiles.end()) -
        band.percentiles.begin());
    for (int k = 0; k < maxK; ++k) {
        if (band.curves[top][static_cast<std::size_t>(k)] < 1e-6) {
            band.collapseDepth = k + 1;
            break;
        }
    }
    return band;
}

PersistenceReport topKPersistence(const TradeoffFront& front, int k) {
    if (front.points.empty()) throw ValidationError("persistence needs a non-empty front");
    const int n = static_cast<int>(front.points.front().ranking.size());
    if (k < 1 || k > n)
        throw ValidationError("k=" + std::to_string(k) + " outside 1.." + std::to_string(n));

    std::vector<int> counts(static_cast<std::size_t>(n), 0);
    for (const auto& point : front.points)
        for (int p = 0; p < k; ++p)
            ++counts[static_cast<std::size_t>(point.ranking[static_cast<std::size_t>(p)])];

    PersistenceReport report;
    const double lists = static_cast<double>(front.points.size());
    for (int i = 0; i < n; ++i) {
        if (counts[static_cast<std::size_t>(i)] == 0) continue;
        report.uniqueItems.push_back(i);
        report.frequency.push_back(static_cast<double>(counts[static_cast<std::size_t>(i)]) /
                                   lists);
    }
    report.compressionRatio =
        static_cast<double>(report.uniqueItems.size()) / static_cast<double>(n);
    return report;
}

namespace {

ItemSet sampleSet(Rng& rng, std::vector<int>& scratch, int setSize) {
    const int n = static_cast<int>(scratch.size());
    std::iota(scratch.begin(), scratch.end(), 0);
    for (int i = 0; i < setSize; ++i) {
        const int j = i + rng.belowInt(n - i);
        std::swap(scratch[static_cast<std::size_t>(i)], scratch[static_cast<std::size_t>(j)]);
    }
    return ItemSet(scratch.begin(), scratch.begin() + setSize);
}

} // namespace

AgreementResult agreementExperiment(const SimilarityKernel& kernel,
                                    const ClusterPartition& goldLabels,
                                    const std::vector<AgreementMethod>& methods,
                                    int sizeMin, int sizeMax, int trialsPerSize,
                                    std::uint64_t seed) {
    const int n = kernel.size();
    if (static_cast<int>(goldLabels.labels.size()) != n)
        throw ValidationError("gold labels do not cover the kernel items");
    if (methods.size() < 2) throw ValidationError("agreement experiment needs >= 2 methods");
    if (sizeMin < 2 || sizeMax < sizeMin || sizeMax > n)
        throw ValidationError("set size range must satisfy 2 <= min <= max <= N");
    if (trialsPerSize < 1) throw ValidationError("trialsPerSize must be >= 1");
    for (const auto& method : methods)
        if (!method.useDpp && static_cast<int>(method.partition.labels.size()) != n)
            throw ValidationError("method \"" + method.name +
                                  "\" partition does not cover the kernel items");

    auto score = [&](const AgreementMethod& method, const ItemSet& set) {
        // log det preserves the DPP ordering and stays comparable after the
        // determinant underflows.
        if (method.useDpp) return subsetLogDet(set, kernel);
        return clusterDiversity(set, kernel, method.partition);
    };

    AgreementResult result;
    for (const auto& method : methods) result.methods.push_back(method.name);

    Rng rng(seed);
    std::vector<int> scratch(static_cast<std::size_t>(n));
    for (int size = sizeMin; size <= sizeMax; ++size) {
        // Paired by sample index: draw 2*trials sets, compare t against
        // trials + t.
        std::vector<ItemSet> sets;
        sets.reserve(static_cast<std::size_t>(2 * trialsPerSize));
        for (int s = 0; s < 2 * trialsPerSize; ++s)
            sets.push_back(sampleSet(rng, scratch, size));

        std::vector<int> agree(methods.size(), 0);
        int valid = 0;
        for (int t = 0; t < trialsPerSize; ++t) {
            ItemSet setA = sets[static_cast<std::size_t>(t)];
            ItemSet setB = sets[static_cast<std::size_t>(trialsPerSize + t)];
            double hA = shannonEntropy(setA, goldLabels);
            double hB = shannonEntropy(setB, goldLabels);
            int attempts = 0;
            while (hA == hB && attempts < 200) { // entropy tie: resample the pair
                setA = sampleSet(rng, scratch, size);
                setB = sampleSet(rng, scratch, size);
                hA = shannonEntropy(setA, goldLabels);
                hB = shannonEntropy(setB, goldLabels);
                ++attempts;
            }
            if (hA == hB) continue; // unresolvable tie: skip the trial
            const bool truthAFirst = hA > hB;
            ++valid;
            for (std::size_t m = 0; m < methods.size(); ++m) {
                const double sA = score(methods[m], setA);
                const double sB = score(methods[m], setB);
                if ((sA > sB) == truthAFirst && sA != sB) ++agree[m];
            }
        }
        result.sizes.push_back(size);
        std::vector<double> row(methods.size(), 0.0);
        for (std::size_t m = 0; m < methods.size(); ++m)
            row[m] = valid > 0 ? static_cast<double>(agree[m]) / static_cast<double>(valid) : 0.0;
        result.agreement.push_back(std::move(row));
    }
    // result.agreement is [size][method]; transpose to [method][size]
    std::vector<std::vector<double>> byMethod(
        methods.size(), std::vector<double>(result.sizes.size(), 0.0));
    for (std::size_t s = 0; s < result.sizes.size(); ++s)
        for (std::size_t m = 0; m < methods.size(); ++m)
            byMethod[m][s] = result.agreement[s][m];
    result.agreement = std::move(byMethod);
    return result;
}

} // namespace divrank
