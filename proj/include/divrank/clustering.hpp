#ifndef DIVRANK_CLUSTERING_HPP
#define DIVRANK_CLUSTERING_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "divrank/diversity.hpp"

namespace divrank {

struct KMeansResult {
    ClusterPartition partition;
    std::vector<Eigen::VectorXd> centroids;
    double sse = 0.0;
    int iterations = 0;
    std::vector<double> sseHistory; // SSE after each assignment pass, non-increasing
};

// Lloyd's algorithm with k-means++ seeding from the given stream. An empty
// cluster is reseeded to the point currently farthest from its centroid.
// Stops when the largest centroid shift drops below tol or after maxIter.
KMeansResult kmeans(const std::vector<Eigen::VectorXd>& points, int k, std::uint64_t seed,
                    int maxIter = 300, double tol = 1e-6);

// Labels CSV ("id,label") covering every corpus id exactly once, labels
// contiguous from 0. Returned labels follow corpus order.
ClusterPartition loadLabels(const std::string& path, const std::vector<std::string>& corpusIds);

} // namespace divrank

#endif
