#ifndef DIVRANK_BENCHDATA_HPP
#define DIVRANK_BENCHDATA_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "divrank/clustering.hpp"
#include "divrank/corpus.hpp"

namespace divrank {

// Deterministic synthetic data used by the shipped benchmarks and the tests.

struct BlobData {
    std::vector<Eigen::VectorXd> points;
    ClusterPartition labels;
};

// nPoints 2-D Gaussian blobs around grid-spaced centers; point i belongs to
// blob i % nBlobs. With spacing >> stddev the gold labels are geometric truth.
BlobData makeBlobs(int nPoints, int nBlobs, double spacing, double stddev, std::uint64_t seed);

// Text corpus with planted topic structure: every item carries terms from one
// of nTopics topic pools, four low-frequency flavor terms that individualize
// it, and a handful of ubiquitous terms that the document-frequency filter is
// expected to drop. Qualities are exponential-ish non-negative integers.
Corpus makeTopicCorpus(int nItems, int nTopics, std::uint64_t seed);

// Parameters of the shipped benchmark corpus (data/benchmark/ideas_200.jsonl).
inline constexpr int kBenchmarkItems = 200;
inline constexpr int kBenchmarkTopics = 15;
inline constexpr std::uint64_t kBenchmarkSeed = 1;

// Writes a topic corpus as JSONL (the shipped benchmark file format).
void writeCorpusJsonl(const Corpus& corpus, const std::string& path);

} // namespace divrank

#endif
