#ifndef DIVRANK_KERNEL_HPP
#define DIVRANK_KERNEL_HPP

#include <string>
#include <vector>

#include <Eigen/Core>

#include "divrank/corpus.hpp"

namespace divrank {

// Symmetric positive-semidefinite similarity matrix with unit diagonal.
// Construction is permissive; validateKernel() is the diagnostic and
// loadKernel(strict=true) the enforcement point.
struct SimilarityKernel {
    Eigen::MatrixXd entries;
    std::vector<std::string> sourceIds; // aligned to rows

    int size() const { return static_cast<int>(entries.rows()); }
    double operator()(int i, int j) const { return entries(i, j); }
};

struct KernelReport {
    bool symmetric = false;
    bool unitDiagonal = false;
    bool psd = false;
    double minEigenvalue = 0.0;

    bool ok() const { return symmetric && unitDiagonal && psd; }
};

// Tolerances for validateKernel. The PSD slack absorbs round-off on large
// Gram matrices, where exact-zero eigenvalues come out slightly negative.
inline constexpr double kSymmetryTol = 1e-12;
inline constexpr double kUnitDiagonalTol = 1e-12;
inline constexpr double kPsdTol = -1e-8;

// Gram matrix of the TF-IDF rows. Requires a vectorized corpus with no
// all-zero row; the diagonal is pinned to exactly 1.
SimilarityKernel cosineKernel(const Corpus& corpus);

// L_ij = exp(-||x_i - x_j||^2 / (2 sigma^2)). sigma <= 0 is rejected.
SimilarityKernel rbfKernel(const std::vector<Eigen::VectorXd>& points, double sigma,
                           std::vector<std::string> ids = {});

// Median of all pairwise Euclidean distances (the median heuristic for RBF
// bandwidth). Even counts average the two middle values.
double medianPairwiseDistance(const std::vector<Eigen::VectorXd>& points);

KernelReport validateKernel(const SimilarityKernel& kernel);

// CSV round trip: header "ids,<id1>,...", one row per id. Values are written
// with 17 significant digits so load(save(k)) reproduces k bit-exactly.
// strict = run validateKernel and fail (NumericError) on violations.
SimilarityKernel loadKernel(const std::string& path, bool strict = false);
void saveKernel(const SimilarityKernel& kernel, const std::string& path);

// Points CSV: header "id,x1,..,xd". Returns ids alongside coordinates.
struct PointSet {
    std::vector<std::string> ids;
    std::vector<Eigen::VectorXd> coords;
};
PointSet loadPoints(const std::string& path);

} // namespace divrank

#endif
