#ifndef DIVRANK_CORPUS_HPP
#define DIVRANK_CORPUS_HPP

#include <string>
#include <unordered_set>
#include <vector>

#include <Eigen/Core>

namespace divrank {

struct Item {
    std::string id;
    std::string title;
    std::string text;
    double quality = 0.0;
};

// An ordered idea collection. File order is the canonical index mapping for
// every downstream matrix (kernels, rankings, labels).
struct Corpus {
    std::vector<Item> items;
    std::vector<std::string> vocabulary; // empty until vectorize() ran
    Eigen::MatrixXd tfidf;               // N x |vocabulary|; rows unit L2 norm or all-zero

    int size() const { return static_cast<int>(items.size()); }
    bool vectorized() const { return tfidf.size() > 0; }
    std::vector<std::string> ids() const;
    std::vector<double> qualities() const;
};

enum class CorpusFormat { jsonl, csv };

// Parses "jsonl" / "csv"; anything else is a validation error.
CorpusFormat corpusFormatFromName(const std::string& name);

// Loads items from a JSONL or CSV file. Each record needs a unique id and a
// finite non-negative quality; title and text are optional.
Corpus ingestCorpus(const std::string& path, CorpusFormat format);

// TF-IDF pipeline over title + text:
//   lowercase -> tokenize on non-alphanumerics -> stop-word removal ->
//   Porter stem -> term counts -> drop terms with doc frequency < 1% or > 90%
//   of N -> tf * idf with tf = raw count and idf = ln((1+N)/(1+df)) + 1 ->
//   L2-normalize rows.
// Items with no usable text get an all-zero row. The idf convention is fixed
// so repeated runs and independent implementations agree bit for bit.
void vectorizeCorpus(Corpus& corpus, const std::unordered_set<std::string>& stopwords);
void vectorizeCorpus(Corpus& corpus); // uses defaultStopwords()

// Binary corpus container (little-endian, versioned). Serialization is
// byte-deterministic: identical corpora produce identical files.
void saveCorpusBinary(const Corpus& corpus, const std::string& path);
Corpus loadCorpusBinary(const std::string& path);

} // namespace divrank

#endif
