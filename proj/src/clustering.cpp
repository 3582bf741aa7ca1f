#include "divrank/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <unordered_map>

#include "divrank/csv.hpp"
#include "divrank/errors.hpp"
#include "divrank/rng.hpp"

namespace divrank {

KMeansResult kmeans(const std::vector<Eigen::VectorXd>& points, int k, std::uint64_t seed,
                    int maxIter, double tol) {
    const int n = static_cast<int>(points.size());
    if (n == 0) throw ValidationError("k-means needs at least one point");
    for (const auto& p : points)
        if (p.size() != points.front().size())
            throw ValidationError("k-means points must share one dimension");
    if (k < 1) throw ValidationError("k must be >= 1");
    if (k > n)
        throw ValidationError("k=" + std::to_string(k) + " exceeds the number of points (" +
                              std::to_string(n) + ")");
    {
        std::set<std::vector<double>> distinct;
        for (const auto& p : points)
            distinct.insert(std::vector<double>(p.data(), p.data() + p.size()));
        if (k > static_cast<int>(distinct.size()))
            throw ValidationError("k=" + std::to_string(k) +
                                  " exceeds the number of distinct points (" +
                                  std::to_string(distinct.size()) + ")");
    }

    Rng rng(seed);
    std::vector<Eigen::VectorXd> centroids;
    centroids.reserve(static_cast<std::size_t>(k));

    // k-means++ seeding: subsequent centers sampled proportionally to the
    // squared distance from the nearest chosen center.
    centroids.push_back(points[static_cast<std::size_t>(rng.belowInt(n))]);
    std::vector<double> dist2(static_cast<std::size_t>(n),
                              std::numeric_limits<double>::infinity());
    while (static_cast<int>(centroids.size()) < k) {
        double total = 0.0;
        for (int i = 0; i < n; ++i) {
            const double d = (points[static_cast<std::size_t>(i)] - centroids.back()).squaredNorm();
            dist2[static_cast<std::size_t>(i)] = std::min(dist2[static_cast<std::size_t>(i)], d);
            total += dist2[static_cast<std::size_t>(i)];
        }
        const double target = rng.uniform() * total;
        double cumulative = 0.0;
        int chosen = n - 1;
        for (int i = 0; i < n; ++i) {
            cumulative += dist2[static_cast<std::size_t>(i)];
            if (cumulative > target) {
                chosen = i;
                break;
            }
        }
        centroids.push_back(points[static_cast<std::size_t>(chosen)]);
    }

    KMeansResult result;
    result.partition.k = k;
    result.partition.labels.assign(static_cast<std::size_t>(n), 0);
    auto& labels = result.partition.labels;

    for (int iter = 1; iter <= maxIter; ++iter) {
        // Assignment, ties toward the smaller cluster index.
        for (int i = 0; i < n; ++i) {
            int best = 0;
            double bestDist = (points[static_cast<std::size_t>(i)] - centroids[0]).squaredNorm();
            for (int c = 1; c < k; ++c) {
                const double d =
                    (points[static_cast<std::size_t>(i)] - centroids[static_cast<std::size_t>(c)])
                        .squaredNorm();
                if (d < bestDist) {
                    bestDist = d;
                    best = c;
                }
            }
            labels[static_cast<std::size_t>(i)] = best;
        }

        // Empty clusters steal the point farthest from its current centroid.
        std::vector<int> counts(static_cast<std::size_t>(k), 0);
        for (int label : labels) ++counts[static_cast<std::size_t>(label)];
        for (int c = 0; c < k; ++c) {
            if (counts[static_cast<std::size_t>(c)] > 0) continue;
            int farthest = -1;
            double farthestDist = -1.0;
            for (int i = 0; i < n; ++i) {
                const int owner = labels[static_cast<std::size_t>(i)];
                if (counts[static_cast<std::size_t>(owner)] <= 1) continue; // keep clusters non-empty
                const double d = (points[static_cast<std::size_t>(i)] -
                                  centroids[static_cast<std::size_t>(owner)])
                                     .squaredNorm();
                if (d > farthestDist) {
                    farthestDist = d;
                    farthest = i;
                }
            }
            if (farthest < 0) break;
            --counts[static_cast<std::size_t>(labels[static_cast<std::size_t>(farthest)])];
            labels[static_cast<std::size_t>(farthest)] = c;
            ++counts[static_cast<std::size_t>(c)];
            centroids[static_cast<std::size_t>(c)] = points[static_cast<std::size_t>(farthest)];
        }

        // Update step.
        std::vector<Eigen::VectorXd> updated(static_cast<std::size_t>(k),
                                             Eigen::VectorXd::Zero(points.front().size()));
        std::fill(counts.begin(), counts.end(), 0);
        for (int i = 0; i < n; ++i) {
            updated[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)])] +=
                points[static_cast<std::size_t>(i)];
            ++counts[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)])];
        }
        double shift = 0.0;
        for (int c = 0; c < k; ++c) {
            if (counts[static_cast<std::size_t>(c)] == 0) continue;
            updated[static_cast<std::size_t>(c)] /=
                static_cast<double>(counts[static_cast<std::size_t>(c)]);
            shift = std::max(shift, (updated[static_cast<std::size_t>(c)] -
                                     centroids[static_cast<std::size_t>(c)])
                                        .norm());
            centroids[static_cast<std::size_t>(c)] = updated[static_cast<std::size_t>(c)];
        }

        double sse = 0.0;
        for (int i = 0; i < n; ++i)
            sse += (points[static_cast<std::size_t>(i)] -
                    centroids[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)])])
                       .squaredNorm();
        result.sseHistory.push_back(sse);
        result.sse = sse;
        result.iterations = iter;
        if (shift < tol) break;
    }

    result.centroids = std::move(centroids);
    return result;
}

ClusterPartition loadLabels(const std::string& path, const std::vector<std::string>& corpusIds) {
    const auto rows = csv::readFile(path);
    if (rows.empty() || rows[0] != std::vector<std::string>{"id", "label"})
        throw ValidationError("labels CSV must start with header \"id,label\": " + path);

    std::unordered_map<std::string, int> labelOf;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.size() != 2)
            throw ValidationError("labels CSV row " + std::to_string(r) + ": expected 2 fields");
        char* end = nullptr;
        const long label = std::strtol(row[1].c_str(), &end, 10);
        if (end == row[1].c_str() || *end != '\0' || label < 0)
            throw ValidationError("labels CSV row " + std::to_string(r) +
                                  ": label must be a non-negative integer");
        if (!labelOf.emplace(row[0], static_cast<int>(label)).second)
            throw ValidationError("labels CSV has duplicate id \"" + row[0] + "\"");
    }

    ClusterPartition partition;
    partition.labels.reserve(corpusIds.size());
    int maxLabel = -1;
    for (const auto& id : corpusIds) {
        auto it = labelOf.find(id);
        if (it == labelOf.end())
            throw ValidationError("labels CSV is missing id \"" + id + "\"");
        partition.labels.push_back(it->second);
        maxLabel = std::max(maxLabel, it->second);
    }
    if (labelOf.size() != corpusIds.size())
        throw ValidationError("labels CSV has " + std::to_string(labelOf.size()) +
                              " ids but the corpus has " + std::to_string(corpusIds.size()));

    std::vector<bool> used(static_cast<std::size_t>(maxLabel) + 1, false);
    for (int label : partition.labels) used[static_cast<std::size_t>(label)] = true;
    for (int l = 0; l <= maxLabel; ++l)
        if (!used[static_cast<std::size_t>(l)])
            throw ValidationError("labels must be contiguous from 0 (label " + std::to_string(l) +
                                  " unused)");
    partition.k = maxLabel + 1;
    return partition;
}

} // namespace divrank
