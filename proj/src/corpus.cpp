#include "divrank/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

#include "divrank/csv.hpp"
#include "divrank/errors.hpp"
#include "divrank/text.hpp"

namespace divrank {

namespace {

using nlohmann::json;

double parseQuality(const std::string& value, const std::string& where) {
    char* end = nullptr;
    const double q = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0')
        throw ValidationError(where + ": quality is not a number: \"" + value + "\"");
    if (!std::isfinite(q) || q < 0)
        throw ValidationError(where + ": quality must be finite and non-negative");
    return q;
}

void checkQuality(double q, const std::string& where) {
    if (!std::isfinite(q) || q < 0)
        throw ValidationError(where + ": quality must be finite and non-negative");
}

Corpus finishIngest(std::vector<Item> items) {
    if (items.size() < 2) throw ValidationError("corpus must contain at least 2 items");
    std::unordered_map<std::string, int> seen;
    for (std::size_t i = 0; i < items.size(); ++i) {
        auto [it, inserted] = seen.emplace(items[i].id, static_cast<int>(i));
        if (!inserted)
            throw ValidationError("duplicate item id \"" + items[i].id + "\" (records " +
                                  std::to_string(it->second + 1) + " and " +
                                  std::to_string(i + 1) + ")");
    }
    Corpus corpus;
    corpus.items = std::move(items);
    return corpus;
}

Corpus ingestJsonl(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path);
    std::vector<Item> items;
    std::string line;
    int lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        const std::string where = "record " + std::to_string(lineNo);
        json record;
        try {
            record = json::parse(line);
        } catch (const json::parse_error& e) {
            throw ValidationError(where + ": invalid JSON (" + e.what() + ")");
        }
        if (!record.is_object()) throw ValidationError(where + ": expected a JSON object");
        Item item;
        if (!record.contains("id") || !record["id"].is_string())
            throw ValidationError(where + ": missing string field \"id\"");
        item.id = record["id"].get<std::string>();
        if (!record.contains("quality") || !record["quality"].is_number())
            throw ValidationError(where + " (id \"" + item.id +
                                  "\"): missing numeric field \"quality\"");
        item.quality = record["quality"].get<double>();
        checkQuality(item.quality, where + " (id \"" + item.id + "\")");
        if (record.contains("title") && record["title"].is_string())
            item.title = record["title"].get<std::string>();
        if (record.contains("text") && record["text"].is_string())
            item.text = record["text"].get<std::string>();
        items.push_back(std::move(item));
    }
    return finishIngest(std::move(items));
}

Corpus ingestCsv(const std::string& path) {
    const auto rows = csv::readFile(path);
    if (rows.empty()) throw ValidationError("corpus must contain at least 2 items");
    const std::vector<std::string> expected = {"id", "title", "text", "quality"};
    if (rows[0] != expected)
        throw ValidationError("corpus CSV must start with header \"id,title,text,quality\"");
    std::vector<Item> items;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        const std::string where = "record " + std::to_string(r);
        if (row.size() != 4)
            throw ValidationError(where + ": expected 4 fields, got " +
                                  std::to_string(row.size()));
        Item item;
        item.id = row[0];
        item.title = row[1];
        item.text = row[2];
        if (row[3].empty())
            throw ValidationError(where + " (id \"" + item.id + "\"): missing quality");
        item.quality = parseQuality(row[3], where + " (id \"" + item.id + "\")");
        items.push_back(std::move(item));
    }
    return finishIngest(std::move(items));
}

} // namespace

std::vector<std::string> Corpus::ids() const {
    std::vector<std::string> out;
    out.reserve(items.size());
    for (const auto& item : items) out.push_back(item.id);
    return out;
}

std::vector<double> Corpus::qualities() const {
    std::vector<double> out;
    out.reserve(items.size());
    for (const auto& item : items) out.push_back(item.quality);
    return out;
}

CorpusFormat corpusFormatFromName(const std::string& name) {
    if (name == "jsonl") return CorpusFormat::jsonl;
    if (name == "csv") return CorpusFormat::csv;
    throw ValidationError("unknown corpus format \"" + name + "\" (expected jsonl or csv)");
}

Corpus ingestCorpus(const std::string& path, CorpusFormat format) {
    return format == CorpusFormat::jsonl ? ingestJsonl(path) : ingestCsv(path);
}

void vectorizeCorpus(Corpus& corpus, const std::unordered_set<std::string>& stopwords) {
    const int n = corpus.size();
    if (n < 2) throw ValidationError("corpus must contain at least 2 items");

    std::vector<std::map<std::string, int>> counts(static_cast<std::size_t>(n));
    bool anyText = false;
    for (int i = 0; i < n; ++i) {
        const Item& item = corpus.items[static_cast<std::size_t>(i)];
        const auto tokens = tokenize(item.title + " " + item.text);
        if (!tokens.empty()) anyText = true;
        for (const auto& token : tokens) {
            if (stopwords.count(token)) continue;
            ++counts[static_cast<std::size_t>(i)][porterStem(token)];
        }
    }
    if (!anyText) throw ValidationError("cannot vectorize: all items have empty text");

    std::map<std::string, int> docFreq;
    for (const auto& doc : counts)
        for (const auto& [term, count] : doc) ++docFreq[term];

    // Retain terms with document frequency in [1%, 90%] of N. The vocabulary
    // is sorted so the column order is deterministic.
    corpus.vocabulary.clear();
    const double nDocs = static_cast<double>(n);
    for (const auto& [term, df] : docFreq) {
        const double fraction = static_cast<double>(df) / nDocs;
        if (fraction < 0.01 || fraction > 0.90) continue;
        corpus.vocabulary.push_back(term);
    }
    if (corpus.vocabulary.empty())
        throw ValidationError(
            "vocabulary is empty after document-frequency filtering; "
            "relax the 1%/90% thresholds or supply more varied text");

    std::unordered_map<std::string, int> column;
    for (std::size_t c = 0; c < corpus.vocabulary.size(); ++c)
        column[corpus.vocabulary[c]] = static_cast<int>(c);

    const int v = static_cast<int>(corpus.vocabulary.size());
    corpus.tfidf = Eigen::MatrixXd::Zero(n, v);
    for (int i = 0; i < n; ++i) {
        for (const auto& [term, count] : counts[static_cast<std::size_t>(i)]) {
            auto it = column.find(term);
            if (it == column.end()) continue;
            const double df = static_cast<double>(docFreq[term]);
            const double idf = std::log((1.0 + nDocs) / (1.0 + df)) + 1.0;
            corpus.tfidf(i, it->second) = static_cast<double>(count) * idf;
        }
        const double norm = corpus.tfidf.row(i).norm();
        if (norm > 0) corpus.tfidf.row(i) /= norm;
    }
}

void vectorizeCorpus(Corpus& corpus) { vectorizeCorpus(corpus, defaultStopwords()); }

namespace {

constexpr char kMagic[4] = {'D', 'R', 'K', 'C'};
constexpr std::uint32_t kVersion = 1;

void writeBytes(std::ostream& out, const void* data, std::size_t size) {
    out.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
}

template <typename T>
void writeValue(std::ostream& out, T value) {
    static_assert(std::is_trivially_copyable_v<T>);
    writeBytes(out, &value, sizeof(T)); // little-endian hosts only
}

void writeString(std::ostream& out, const std::string& s) {
    writeValue<std::uint64_t>(out, s.size());
    writeBytes(out, s.data(), s.size());
}

template <typename T>
T readValue(std::istream& in) {
    T value{};
    in.read(reinterpret_cast<char*>(&value), sizeof(T));
    if (!in) throw ValidationError("corpus file truncated");
    return value;
}

std::string readString(std::istream& in) {
    const auto size = readValue<std::uint64_t>(in);
    if (size > (1ULL << 32)) throw ValidationError("corpus file corrupt: oversized string");
    std::string s(static_cast<std::size_t>(size), '\0');
    in.read(s.data(), static_cast<std::streamsize>(size));
    if (!in) throw ValidationError("corpus file truncated");
    return s;
}

} // namespace

void saveCorpusBinary(const Corpus& corpus, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write file: " + path);
    writeBytes(out, kMagic, sizeof(kMagic));
    writeValue<std::uint32_t>(out, kVersion);
    writeValue<std::uint64_t>(out, corpus.items.size());
    writeValue<std::uint64_t>(out, corpus.vocabulary.size());
    writeValue<std::uint8_t>(out, corpus.vectorized() ? 1 : 0);
    for (const auto& item : corpus.items) {
        writeString(out, item.id);
        writeString(out, item.title);
        writeString(out, item.text);
        writeValue<double>(out, item.quality);
    }
    for (const auto& term : corpus.vocabulary) writeString(out, term);
    if (corpus.vectorized()) {
        for (int i = 0; i < corpus.tfidf.rows(); ++i)
            for (int c = 0; c < corpus.tfidf.cols(); ++c)
                writeValue<double>(out, corpus.tfidf(i, c));
    }
    if (!out) throw IoError("write failed: " + path);
}

Corpus loadCorpusBinary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path);
    char magic[4];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw ValidationError("not a corpus file: " + path);
    const auto version = readValue<std::uint32_t>(in);
    if (version != kVersion)
        throw ValidationError("unsupported corpus file version " + std::to_string(version));
    const auto n = readValue<std::uint64_t>(in);
    const auto v = readValue<std::uint64_t>(in);
    const auto hasTfidf = readValue<std::uint8_t>(in);
    Corpus corpus;
    corpus.items.reserve(static_cast<std::size_t>(n));
    for (std::uint64_t i = 0; i < n; ++i) {
        Item item;
        item.id = readString(in);
        item.title = readString(in);
        item.text = readString(in);
        item.quality = readValue<double>(in);
        corpus.items.push_back(std::move(item));
    }
    corpus.vocabulary.reserve(static_cast<std::size_t>(v));
    for (std::uint64_t c = 0; c < v; ++c) corpus.vocabulary.push_back(readString(in));
    if (hasTfidf) {
        corpus.tfidf.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(v));
        for (Eigen::Index i = 0; i < corpus.tfidf.rows(); ++i)
            for (Eigen::Index c = 0; c < corpus.tfidf.cols(); ++c)
                corpus.tfidf(i, c) = readValue<double>(in);
    }
    return corpus;
}

} // namespace divrank
