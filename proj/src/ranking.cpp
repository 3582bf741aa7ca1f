#include "divrank/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <optional>
#include <unordered_map>

#include "divrank/csv.hpp"
#include "divrank/errors.hpp"
#include "divrank/rng.hpp"

namespace divrank {

namespace {

double symAt(const SimilarityKernel& kernel, int i, int j) {
    return 0.5 * (kernel.entries(i, j) + kernel.entries(j, i));
}

} // namespace

Ranking greedyDiverseRanking(const SimilarityKernel& kernel, const RelevanceVector* relevance) {
    const int n = kernel.size();
    if (n < 2) throw ValidationError("greedy ranking needs at least 2 items");
    if (relevance && static_cast<int>(relevance->size()) != n)
        throw ValidationError("relevance vector does not match kernel size");

    // Seed with the least similar pair: the determinant-optimal 2-subset for
    // non-negative kernels. Scan order makes ties lexicographic.
    int seedA = 0;
    int seedB = 1;
    double minSim = symAt(kernel, 0, 1);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double sim = symAt(kernel, i, j);
            if (sim < minSim) {
                minSim = sim;
                seedA = i;
                seedB = j;
            }
        }
    }

    // Per-candidate Cholesky row against the selected prefix, maintained
    // incrementally: one O(k) update per candidate per step instead of a full
    // O(k^2) refactorization.
    std::vector<std::vector<double>> row(static_cast<std::size_t>(n));
    std::vector<double> residual(static_cast<std::size_t>(n));
    std::vector<bool> picked(static_cast<std::size_t>(n), false);
    for (int i = 0; i < n; ++i) residual[static_cast<std::size_t>(i)] = kernel.entries(i, i);

    Ranking order;
    order.reserve(static_cast<std::size_t>(n));

    auto appendSelected = [&](int s) {
        const double diag = kernel.entries(s, s);
        const double pivotSq =
            std::clamp(residual[static_cast<std::size_t>(s)], kPivotFloor,
                       std::max(diag, kPivotFloor));
        const double pivot = std::sqrt(pivotSq);
        auto& selRow = row[static_cast<std::size_t>(s)];
        for (int c = 0; c < n; ++c) {
            if (picked[static_cast<std::size_t>(c)] || c == s) continue;
            auto& candRow = row[static_cast<std::size_t>(c)];
            double value = symAt(kernel, c, s);
            for (std::size_t t = 0; t < selRow.size(); ++t) value -= candRow[t] * selRow[t];
            value /= pivot;
            candRow.push_back(value);
            residual[static_cast<std::size_t>(c)] -= value * value;
        }
        selRow.push_back(pivot);
        picked[static_cast<std::size_t>(s)] = true;
        order.push_back(s);
    };

    appendSelected(seedA);
    appendSelected(seedB);

    while (static_cast<int>(order.size()) < n) {
        int best = -1;
        double bestPivot = 0.0;
        for (int c = 0; c < n; ++c) {
            if (picked[static_cast<std::size_t>(c)]) continue;
            const double pivotSq =
                std::clamp(residual[static_cast<std::size_t>(c)], kPivotFloor,
                           std::max(kernel.entries(c, c), kPivotFloor));
            if (pivotSq > bestPivot) {
                bestPivot = pivotSq;
                best = c;
            }
        }
        if (best == -1 || bestPivot <= kPivotFloor) {
            // Every remaining pivot sits at the floor: the determinant no
            // longer discriminates, so finish with the cheap optimal sort.
            std::vector<int> tail;
            for (int c = 0; c < n; ++c)
                if (!picked[static_cast<std::size_t>(c)]) tail.push_back(c);
            if (relevance) {
                std::stable_sort(tail.begin(), tail.end(), [&](int a, int b) {
                    return (*relevance)[static_cast<std::size_t>(a)] >
                           (*relevance)[static_cast<std::size_t>(b)];
                });
            }
            order.insert(order.end(), tail.begin(), tail.end());
            break;
        }
        appendSelected(best);
    }
    return order;
}

Ranking qualityRanking(const std::vector<double>& qualities) {
    Ranking order(qualities.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return qualities[static_cast<std::size_t>(a)] > qualities[static_cast<std::size_t>(b)];
    });
    return order;
}

Ranking mmrRanking(const SimilarityKernel& kernel, const RelevanceVector& rel, double lambda) {
    const int n = kernel.size();
    if (static_cast<int>(rel.size()) != n)
        throw ValidationError("relevance vector does not match kernel size");
    if (!(lambda >= 0.0 && lambda <= 1.0))
        throw ValidationError("MMR lambda must lie in [0, 1]");

    std::vector<double> maxSim(static_cast<std::size_t>(n), 0.0);
    std::vector<bool> picked(static_cast<std::size_t>(n), false);
    Ranking order;
    order.reserve(static_cast<std::size_t>(n));
    for (int step = 0; step < n; ++step) {
        int best = -1;
        double bestScore = 0.0;
        for (int c = 0; c < n; ++c) {
            if (picked[static_cast<std::size_t>(c)]) continue;
            const double penalty = order.empty() ? 0.0 : maxSim[static_cast<std::size_t>(c)];
            const double score =
                lambda * rel[static_cast<std::size_t>(c)] - (1.0 - lambda) * penalty;
            if (best == -1 || score > bestScore) {
                bestScore = score;
                best = c;
            }
        }
        picked[static_cast<std::size_t>(best)] = true;
        order.push_back(best);
        for (int c = 0; c < n; ++c) {
            if (picked[static_cast<std::size_t>(c)]) continue;
            maxSim[static_cast<std::size_t>(c)] =
                std::max(maxSim[static_cast<std::size_t>(c)], symAt(kernel, c, best));
        }
    }
    return order;
}

std::vector<Ranking> randomRankings(int n, int itemCount, std::uint64_t seed) {
    if (n < 1) throw ValidationError("number of random rankings must be >= 1");
    if (itemCount < 1) throw ValidationError("item count must be >= 1");
    Rng rng(seed);
    std::vector<Ranking> rankings;
    rankings.reserve(static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r) {
        Ranking perm(static_cast<std::size_t>(itemCount));
        std::iota(perm.begin(), perm.end(), 0);
        for (int i = itemCount - 1; i > 0; --i) {
            const int j = rng.belowInt(i + 1);
            std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
        }
        rankings.push_back(std::move(perm));
    }
    return rankings;
}

void saveRankingCsv(const Ranking& ranking, const std::vector<std::string>& ids,
                    const std::vector<double>* qualities, const SimilarityKernel* kernel,
                    const std::string& path) {
    const int n = static_cast<int>(ids.size());
    if (!isPermutation(ranking, n))
        throw ValidationError("ranking is not a permutation of the id list");
    if (qualities && static_cast<int>(qualities->size()) != n)
        throw ValidationError("qualities do not match the id list");
    if (kernel && kernel->size() != n)
        throw ValidationError("kernel does not match the id list");

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write file: " + path);
    out << "rank,id,quality" << (kernel ? ",prefix_det\n" : "\n");
    std::optional<PrefixCholesky> chol;
    if (kernel) chol.emplace(*kernel);
    char buffer[64];
    for (int p = 0; p < n; ++p) {
        const int item = ranking[static_cast<std::size_t>(p)];
        const double quality = qualities ? (*qualities)[static_cast<std::size_t>(item)] : 0.0;
        std::snprintf(buffer, sizeof(buffer), "%.17g", quality);
        out << (p + 1) << ',' << csv::escape(ids[static_cast<std::size_t>(item)]) << ','
            << buffer;
        if (chol) {
            chol->append(item);
            std::snprintf(buffer, sizeof(buffer), "%.17g",
                          chol->floored() ? 0.0 : std::exp(chol->logDet()));
            out << ',' << buffer;
        }
        out << '\n';
    }
    if (!out) throw IoError("write failed: " + path);
}

Ranking loadRankingCsv(const std::string& path, const std::vector<std::string>& ids) {
    const auto rows = csv::readFile(path);
    if (rows.empty() || rows[0].size() < 2 || rows[0][0] != "rank" || rows[0][1] != "id")
        throw ValidationError("ranking CSV must start with header \"rank,id,...\": " + path);
    std::unordered_map<std::string, int> indexOf;
    for (std::size_t i = 0; i < ids.size(); ++i) indexOf[ids[i]] = static_cast<int>(i);
    Ranking ranking;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        if (rows[r].size() < 2)
            throw ValidationError("ranking CSV row " + std::to_string(r) + " is malformed");
        auto it = indexOf.find(rows[r][1]);
        if (it == indexOf.end())
            throw ValidationError("ranking CSV references unknown id \"" + rows[r][1] + "\"");
        ranking.push_back(it->second);
    }
    if (!isPermutation(ranking, static_cast<int>(ids.size())))
        throw ValidationError("ranking CSV is not a permutation of the id list");
    return ranking;
}

} // namespace divrank
