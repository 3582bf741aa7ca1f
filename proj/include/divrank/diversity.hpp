#ifndef DIVRANK_DIVERSITY_HPP
#define DIVRANK_DIVERSITY_HPP

#include <vector>

#include "divrank/kernel.hpp"

namespace divrank {

using ItemSet = std::vector<int>; // distinct item indices
using Ranking = std::vector<int>; // permutation of 0..N-1, position 0 = top

// A total partition of the ground set into k clusters, labels in 0..k-1.
struct ClusterPartition {
    std::vector<int> labels;
    int k = 0;
};

// Squared-pivot floor for (log-)determinants. Near-duplicate items drive
// subset determinants to zero; the floor caps each term's penalty at
// ln(1e-12) ~= -27.6 while preserving the ordering of non-degenerate sets.
inline constexpr double kPivotFloor = 1e-12;

// Grows a Cholesky factor of a kernel principal submatrix one item at a time,
// accumulating the log-determinant of every prefix. Appending item i costs
// O(k^2) at prefix length k, so a full pass over a ranking is O(N^3) instead
// of the O(N^4) of refactoring every prefix.
class PrefixCholesky {
public:
    explicit PrefixCholesky(const SimilarityKernel& kernel);

    // Adds one item; returns its floored squared pivot.
    double append(int item);

    int size() const { return static_cast<int>(selected_.size()); }
    double logDet() const { return logDet_; }
    bool floored() const { return floored_; } // any pivot hit the floor so far

private:
    const SimilarityKernel& kernel_;
    std::vector<int> selected_;
    std::vector<double> rows_; // packed lower-triangular factor
    double logDet_ = 0.0;
    bool floored_ = false;
};

// det(L_S) and its log, via a floored Cholesky factorization of the
// symmetrized submatrix. When any pivot was floored the determinant is
// reported as exactly 0.
double subsetLogDet(const ItemSet& set, const SimilarityKernel& kernel);
double subsetDet(const ItemSet& set, const SimilarityKernel& kernel);

// Additive submodular cluster-coverage diversity:
//   sum_k sqrt( sum_{j in S ∩ P_k} 1/(N*M) * sum_{i in P_k} L_ij ),  M = |S|.
// The inner sum runs over the whole cluster, selected or not, so items
// representative of their cluster are rewarded first. Empty set scores 0.
double clusterDiversity(const ItemSet& set, const SimilarityKernel& kernel,
                        const ClusterPartition& partition);

// L-ensemble set probability det(L_S) / det(L + I).
double dppProbability(const ItemSet& set, const SimilarityKernel& kernel);

// det(L_S)^(1/|S|): geometric mean of the submatrix eigenvalues, comparable
// across set sizes.
double geometricDiversity(const ItemSet& set, const SimilarityKernel& kernel);

// Rank-diversity score of a permutation:
//   sum_{k=1}^{min(N,H)} log(det(L_{prefix k})) / k
// computed with one incremental factorization over the ranking order. Beyond
// the horizon the prefix determinants have collapsed toward the floor, so
// truncation is both a speed and a fidelity knob. horizon <= 0 means N.
double rankDiversity(const Ranking& ranking, const SimilarityKernel& kernel, int horizon = 0);

// Shannon entropy (natural log) of the cluster proportions of the set.
double shannonEntropy(const ItemSet& set, const ClusterPartition& partition);

bool isPermutation(const Ranking& ranking, int n);

} // namespace divrank

#endif
