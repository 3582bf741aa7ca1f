#include "divrank/diversity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Cholesky>

#include "divrank/errors.hpp"

namespace divrank {

namespace {

void checkSet(const ItemSet& set, int n) {
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int idx : set) {
        if (idx < 0 || idx >= n)
            throw ValidationError("item index " + std::to_string(idx) + " out of range 0.." +
                                  std::to_string(n - 1));
        if (seen[static_cast<std::size_t>(idx)])
            throw ValidationError("duplicate item index " + std::to_string(idx) + " in set");
        seen[static_cast<std::size_t>(idx)] = true;
    }
}

void checkPartition(const ClusterPartition& partition, int n) {
    if (static_cast<int>(partition.labels.size()) != n)
        throw ValidationError("partition covers " + std::to_string(partition.labels.size()) +
                              " items, kernel has " + std::to_string(n));
    for (int label : partition.labels)
        if (label < 0 || label >= partition.k)
            throw ValidationError("cluster label " + std::to_string(label) +
                                  " outside 0.." + std::to_string(partition.k - 1));
}

} // namespace

bool isPermutation(const Ranking& ranking, int n) {
    if (static_cast<int>(ranking.size()) != n) return false;
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int idx : ranking) {
        if (idx < 0 || idx >= n || seen[static_cast<std::size_t>(idx)]) return false;
        seen[static_cast<std::size_t>(idx)] = true;
    }
    return true;
}

PrefixCholesky::PrefixCholesky(const SimilarityKernel& kernel) : kernel_(kernel) {}

double PrefixCholesky::append(int item) {
    const int k = size();
    const auto& m = kernel_.entries;
    // Row of the factor against the current prefix: forward substitution on
    // the symmetrized kernel column.
    std::vector<double> row(static_cast<std::size_t>(k) + 1);
    double normSq = 0.0;
    const double* base = rows_.data();
    for (int j = 0; j < k; ++j) {
        const double* rowJ = base + static_cast<std::size_t>(j) * (j + 1) / 2;
        double value = 0.5 * (m(item, selected_[static_cast<std::size_t>(j)]) +
                              m(selected_[static_cast<std::size_t>(j)], item));
        for (int t = 0; t < j; ++t) value -= row[static_cast<std::size_t>(t)] * rowJ[t];
        value /= rowJ[j];
        row[static_cast<std::size_t>(j)] = value;
        normSq += value * value;
    }
    const double diag = m(item, item);
    const double residual = diag - normSq;
    // Floor keeps the log finite near rank deficiency; the cap at the
    // diagonal entry keeps prefix determinants non-increasing under round-off.
    const double pivotSq = std::clamp(residual, kPivotFloor, std::max(diag, kPivotFloor));
    if (residual < kPivotFloor) floored_ = true;
    row[static_cast<std::size_t>(k)] = std::sqrt(pivotSq);
    rows_.insert(rows_.end(), row.begin(), row.end());
    selected_.push_back(item);
    logDet_ += std::log(pivotSq);
    return pivotSq;
}

double subsetLogDet(const ItemSet& set, const SimilarityKernel& kernel) {
    checkSet(set, kernel.size());
    PrefixCholesky chol(kernel);
    for (int idx : set) chol.append(idx);
    return chol.logDet();
}

double subsetDet(const ItemSet& set, const SimilarityKernel& kernel) {
    checkSet(set, kernel.size());
    PrefixCholesky chol(kernel);
    for (int idx : set) chol.append(idx);
    return chol.floored() ? 0.0 : std::exp(chol.logDet());
}

double clusterDiversity(const ItemSet& set, const SimilarityKernel& kernel,
                        const ClusterPartition& partition) {
    const int n = kernel.size();
    checkSet(set, n);
    checkPartition(partition, n);
    if (set.empty()) return 0.0;

    std::vector<std::vector<int>> members(static_cast<std::size_t>(partition.k));
    for (int i = 0; i < n; ++i)
        members[static_cast<std::size_t>(partition.labels[static_cast<std::size_t>(i)])]
            .push_back(i);

    const double scale = 1.0 / (static_cast<double>(n) * static_cast<double>(set.size()));
    std::vector<double> perCluster(static_cast<std::size_t>(partition.k), 0.0);
    for (int j : set) {
        const int cluster = partition.labels[static_cast<std::size_t>(j)];
        double similaritySum = 0.0;
        for (int i : members[static_cast<std::size_t>(cluster)])
            similaritySum += kernel.entries(i, j);
        perCluster[static_cast<std::size_t>(cluster)] += scale * similaritySum;
    }
    double total = 0.0;
    for (double value : perCluster)
        total += std::sqrt(std::max(value, 0.0)); // clamp so sqrt stays defined for negative entries
    return total;
}

double dppProbability(const ItemSet& set, const SimilarityKernel& kernel) {
    checkSet(set, kernel.size());
    PrefixCholesky numerator(kernel);
    for (int idx : set) numerator.append(idx);
    if (numerator.floored()) return 0.0;

    const Eigen::MatrixXd sym = 0.5 * (kernel.entries + kernel.entries.transpose());
    const Eigen::MatrixXd shifted =
        sym + Eigen::MatrixXd::Identity(kernel.size(), kernel.size());
    Eigen::LLT<Eigen::MatrixXd> llt(shifted);
    if (llt.info() != Eigen::Success)
        throw NumericError("det(L + I) factorization failed; kernel is far from PSD");
    // Work in logs: det(L + I) overflows double for kernels of a few hundred items.
    double logDenominator = 0.0;
    for (int i = 0; i < kernel.size(); ++i)
        logDenominator += 2.0 * std::log(llt.matrixL()(i, i));
    return std::exp(numerator.logDet() - logDenominator);
}

double geometricDiversity(const ItemSet& set, const SimilarityKernel& kernel) {
    if (set.empty()) throw ValidationError("geometric diversity of an empty set is undefined");
    checkSet(set, kernel.size());
    PrefixCholesky chol(kernel);
    for (int idx : set) chol.append(idx);
    if (chol.floored()) return 0.0;
    return std::exp(chol.logDet() / static_cast<double>(set.size()));
}

double rankDiversity(const Ranking& ranking, const SimilarityKernel& kernel, int horizon) {
    const int n = kernel.size();
    if (!isPermutation(ranking, n))
        throw ValidationError("ranking is not a permutation of 0.." + std::to_string(n - 1));
    const int depth = horizon <= 0 ? n : std::min(horizon, n);
    PrefixCholesky chol(kernel);
    double score = 0.0;
    for (int k = 1; k <= depth; ++k) {
        chol.append(ranking[static_cast<std::size_t>(k) - 1]);
        score += chol.logDet() / static_cast<double>(k);
    }
    return score;
}

double shannonEntropy(const ItemSet& set, const ClusterPartition& partition) {
    checkPartition(partition, static_cast<int>(partition.labels.size()));
    if (set.empty()) return 0.0;
    std::vector<int> counts(static_cast<std::size_t>(partition.k), 0);
    for (int idx : set) {
        if (idx < 0 || idx >= static_cast<int>(partition.labels.size()))
            throw ValidationError("item index " + std::to_string(idx) +
                                  " outside the partition");
        ++counts[static_cast<std::size_t>(partition.labels[static_cast<std::size_t>(idx)])];
    }
    const double total = static_cast<double>(set.size());
    double entropy = 0.0;
    for (int count : counts) {
        if (count == 0) continue;
        const double p = static_cast<double>(count) / total;
        entropy -= p * std::log(p);
    }
    return entropy;
}

} // namespace divrank
