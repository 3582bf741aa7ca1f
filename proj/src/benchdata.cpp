#include "divrank/benchdata.hpp"

#include <cmath>
#include <fstream>

#include "json.hpp"

#include "divrank/errors.hpp"
#include "divrank/rng.hpp"

namespace divrank {

namespace {

double gaussian(Rng& rng) {
    // Box-Muller; u1 kept away from 0.
    const double u1 = 1.0 - rng.uniform();
    const double u2 = rng.uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

} // namespace

BlobData makeBlobs(int nPoints, int nBlobs, double spacing, double stddev, std::uint64_t seed) {
    if (nPoints < nBlobs || nBlobs < 1)
        throw ValidationError("makeBlobs needs nPoints >= nBlobs >= 1");
    Rng rng(seed);
    const int side = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(nBlobs))));
    std::vector<Eigen::Vector2d> centers;
    centers.reserve(static_cast<std::size_t>(nBlobs));
    for (int b = 0; b < nBlobs; ++b)
        centers.emplace_back(spacing * (b % side), spacing * (b / side));

    BlobData data;
    data.labels.k = nBlobs;
    for (int i = 0; i < nPoints; ++i) {
        const int blob = i % nBlobs;
        Eigen::VectorXd point(2);
        point << centers[static_cast<std::size_t>(blob)].x() + stddev * gaussian(rng),
            centers[static_cast<std::size_t>(blob)].y() + stddev * gaussian(rng);
        data.points.push_back(std::move(point));
        data.labels.labels.push_back(blob);
    }
    return data;
}

Corpus makeTopicCorpus(int nItems, int nTopics, std::uint64_t seed) {
    if (nItems < 2 || nTopics < 1 || nItems < nTopics)
        throw ValidationError("makeTopicCorpus needs nItems >= nTopics >= 1");
    Rng rng(seed);

    constexpr int kTopicTermCount = 12;
    constexpr int kTopicDraws = 8;

    Corpus corpus;
    corpus.items.reserve(static_cast<std::size_t>(nItems));
    for (int i = 0; i < nItems; ++i) {
        const int topic = i % nTopics;
        Item item;
        char idBuf[32];
        std::snprintf(idBuf, sizeof(idBuf), "idea%03d", i);
        item.id = idBuf;
        item.title = "benchmark idea " + std::to_string(i);

        std::string text;
        for (int d = 0; d < kTopicDraws; ++d) {
            const int term = rng.belowInt(kTopicTermCount);
            text += "topic" + std::to_string(topic) + "word" + std::to_string(term) + " ";
        }
        // Four flavor terms per item, each shared with exactly one other item
        // so its document frequency sits right at the 1% retention boundary
        // for a 200-item corpus.
        for (int j = 0; j < 2 * nItems; ++j) {
            const int primary = j % nItems;
            const int secondary = (7 * j + 13) % nItems;
            if (primary == i || secondary == i)
                text += "flavor" + std::to_string(j) + " ";
        }
        // Ubiquitous filler that the >90% document-frequency filter removes.
        text += "connect local community project ";
        item.text = text;
        item.quality = std::floor(12.0 * -std::log(1.0 - rng.uniform()));
        corpus.items.push_back(std::move(item));
    }
    return corpus;
}

void writeCorpusJsonl(const Corpus& corpus, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write file: " + path);
    for (const auto& item : corpus.items) {
        nlohmann::ordered_json record;
        record["id"] = item.id;
        record["title"] = item.title;
        record["text"] = item.text;
        record["quality"] = item.quality;
        out << record.dump() << '\n';
    }
    if (!out) throw IoError("write failed: " + path);
}

} // namespace divrank
