#include "divrank/paperdemo.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "divrank/diversity.hpp"
#include "divrank/errors.hpp"
#include "divrank/moo.hpp"
#include "divrank/quality.hpp"
#include "divrank/ranking.hpp"

namespace divrank {

Corpus fourIdeaDemoCorpus() {
    Corpus corpus;
    corpus.items = {
        {"compost-city", "Compost It",
         "partner with the city to build a closed loop composting system for household waste",
         20.0},
        {"compost-curbside", "Curbside compost pickup",
         "a statewide curbside pickup program encouraging residents to separate compost material",
         12.0},
        {"food-festival", "Art of food festival",
         "a festival celebrating regional cooking and art with edible sculpture displays", 9.0},
        {"online-farm", "Online farm delivery",
         "an online ordering group that grows vegetables and delivers them to nearby customers",
         3.0}};
    return corpus;
}

SimilarityKernel fourIdeaDemoKernel() {
    SimilarityKernel kernel;
    kernel.sourceIds = {"compost-city", "compost-curbside", "food-festival", "online-farm"};
    kernel.entries = Eigen::MatrixXd::Identity(4, 4);
    kernel.entries(0, 1) = 0.61;
    kernel.entries(1, 0) = 0.61;
    return kernel;
}

SimilarityKernel fiveSketchDemoKernel() {
    SimilarityKernel kernel;
    kernel.sourceIds = {"sketch1", "sketch2", "sketch3", "sketch4", "sketch5"};
    kernel.entries.resize(5, 5);
    // Strictly diagonally dominant, hence positive definite. Sketches 3 and 4
    // (indices 2 and 3) are the similar pair.
    kernel.entries << 1.00, 0.10, 0.05, 0.08, 0.12, //
        0.10, 1.00, 0.07, 0.06, 0.09,               //
        0.05, 0.07, 1.00, 0.72, 0.11,               //
        0.08, 0.06, 0.72, 1.00, 0.04,               //
        0.12, 0.09, 0.11, 0.04, 1.00;
    return kernel;
}

std::vector<double> fiveSketchQualities() { return {3.0, 2.0, 7.0, 8.0, 6.0}; }

namespace {

bool near(double got, double want, double tol) { return std::abs(got - want) <= tol; }

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

void check(std::vector<DemoCheck>& checks, const std::string& name, bool pass,
           const std::string& detail) {
    checks.push_back({name, pass, detail});
}

void checkNear(std::vector<DemoCheck>& checks, const std::string& name, double got, double want,
               double tol) {
    check(checks, name, near(got, want, tol),
          "got " + fmt(got) + ", expected " + fmt(want) + " +/- " + fmt(tol));
}

std::string rankingToString(const Ranking& r) {
    std::string s = "[";
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(r[i] + 1); // display 1-based
    }
    return s + "]";
}

} // namespace

std::vector<DemoCheck> runPaperDemo() {
    std::vector<DemoCheck> checks;

    // Determinants of the idealized 4-idea kernel.
    const SimilarityKernel ideal = fourIdeaDemoKernel();
    checkNear(checks, "det similar pair {1,2}", subsetDet({0, 1}, ideal), 0.6279, 1e-6);
    checkNear(checks, "det dissimilar pair {1,3}", subsetDet({0, 2}, ideal), 1.0, 1e-9);

    // Cluster-coverage ladder: three selected items spread over 1, 2 and 3
    // clusters score sqrt(3), 1 + sqrt(2) and 3 when the matrix is scaled so
    // every selected item contributes exactly 1 under the root.
    {
        const int n = 3, m = 3;
        auto scaled = [&](const std::vector<int>& labels) {
            SimilarityKernel k;
            k.sourceIds = {"a", "b", "c"};
            k.entries = Eigen::MatrixXd::Zero(n, n);
            std::vector<int> count(static_cast<std::size_t>(n), 0);
            for (int label : labels) ++count[static_cast<std::size_t>(label)];
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (labels[static_cast<std::size_t>(i)] == labels[static_cast<std::size_t>(j)])
                        k.entries(i, j) =
                            static_cast<double>(n * m) /
                            count[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)])];
            return k;
        };
        const ItemSet all = {0, 1, 2};
        ClusterPartition one{{0, 0, 0}, 1};
        ClusterPartition two{{0, 0, 1}, 2};
        ClusterPartition three{{0, 1, 2}, 3};
        checkNear(checks, "cluster diversity, one topic",
                  clusterDiversity(all, scaled(one.labels), one), std::sqrt(3.0), 1e-9);
        checkNear(checks, "cluster diversity, two topics",
                  clusterDiversity(all, scaled(two.labels), two), 1.0 + std::sqrt(2.0), 1e-9);
        checkNear(checks, "cluster diversity, three topics",
                  clusterDiversity(all, scaled(three.labels), three), 3.0, 1e-9);
    }

    // Relevance normalization and the two worked DCG/nDCG lists.
    {
        const RelevanceVector rel = normalizeRelevance({11, 5, 3, 2, 1});
        const RelevanceVector expected = {1.0, 0.4, 0.2, 0.1, 0.0};
        bool pass = rel.size() == expected.size();
        for (std::size_t i = 0; pass && i < rel.size(); ++i)
            pass = near(rel[i], expected[i], 1e-12);
        check(checks, "relevance normalization [11,5,3,2,1]", pass,
              "expected [1, 0.4, 0.2, 0.1, 0]");

        const Ranking list1 = {0, 1, 2, 4, 3};
        const Ranking list2 = {3, 0, 1, 2, 4};
        checkNear(checks, "DCG_5 list 1", dcg(list1, rel, 5), 1.304, 0.002);
        checkNear(checks, "DCG_5 list 2", dcg(list2, rel, 5), 0.927, 0.002);
        checkNear(checks, "nDCG_5 list 1", ndcg(list1, rel, 5), 0.998, 0.002);
        checkNear(checks, "nDCG_5 list 2", ndcg(list2, rel, 5), 0.709, 0.002);
    }

    // Genotype decoding by ascending argsort.
    {
        const Ranking got = decodeRanking({0.8, 0.2, 0.1, 0.4, 0.0});
        const Ranking want = {4, 2, 1, 3, 0};
        check(checks, "decode [0.8,0.2,0.1,0.4,0.0]", got == want,
              "got " + rankingToString(got) + ", expected [5,3,2,4,1]");
    }

    // Quality sorts.
    {
        const Ranking got = qualityRanking({20, 12, 9, 3});
        check(checks, "quality sort [20,12,9,3]", got == Ranking{0, 1, 2, 3},
              "got " + rankingToString(got) + ", expected [1,2,3,4]");
        const Ranking sketch = qualityRanking(fiveSketchQualities());
        check(checks, "quality sort [3,2,7,8,6]", sketch == Ranking{3, 2, 4, 0, 1},
              "got " + rankingToString(sketch) + ", expected [4,3,5,1,2]");
    }

    // Entropy of 8 points covering 7 clusters with counts (2,1,1,1,1,1,1).
    {
        ClusterPartition partition{{0, 0, 1, 2, 3, 4, 5, 6}, 7};
        checkNear(checks, "entropy of a 7-of-8 cluster spread",
                  shannonEntropy({0, 1, 2, 3, 4, 5, 6, 7}, partition), 1.9061, 5e-4);
    }

    // Ingest keeps file order and qualities.
    {
        const Corpus demo = fourIdeaDemoCorpus();
        const auto path = std::filesystem::temp_directory_path() /
                          ("divrank_demo_" + std::to_string(::getpid()) + ".jsonl");
        {
            std::ofstream out(path);
            for (const auto& item : demo.items)
                out << "{\"id\":\"" << item.id << "\",\"title\":\"" << item.title
                    << "\",\"text\":\"" << item.text << "\",\"quality\":" << item.quality
                    << "}\n";
        }
        bool pass = false;
        std::string detail;
        try {
            const Corpus loaded = ingestCorpus(path.string(), CorpusFormat::jsonl);
            pass = loaded.size() == 4 && loaded.qualities() == std::vector<double>{20, 12, 9, 3} &&
                   loaded.ids() == demo.ids();
            detail = "N=" + std::to_string(loaded.size());
        } catch (const EngineError& e) {
            detail = e.what();
        }
        std::filesystem::remove(path);
        check(checks, "ingest 4-idea JSONL", pass, detail);
    }

    // The composting pair is the most similar pair under the TF-IDF cosine
    // kernel (the exact value depends on the tokenizer, the ordering does not).
    {
        Corpus demo = fourIdeaDemoCorpus();
        vectorizeCorpus(demo);
        const SimilarityKernel kernel = cosineKernel(demo);
        double maxOther = 0.0;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (!(i == 0 && j == 1)) maxOther = std::max(maxOther, kernel(i, j));
        check(checks, "cosine: composting pair most similar", kernel(0, 1) > maxOther,
              "L(1,2)=" + fmt(kernel(0, 1)) + ", max other=" + fmt(maxOther));
    }

    // Five-item trade-off front: the quality extreme is the quality sort and
    // the diversity extreme does not put the similar pair together up top.
    {
        const SimilarityKernel kernel = fiveSketchDemoKernel();
        const RelevanceVector rel = normalizeRelevance(fiveSketchQualities());
        EvolveConfig config;
        config.popSize = 50;
        config.generations = 60;
        config.seed = 7;
        const TradeoffFront front = evolveFront(kernel, rel, config);
        bool qualityExtreme = false;
        const FrontPoint* mostDiverse = nullptr;
        for (const auto& point : front.points) {
            if (point.fQuality == 0.0 && point.ranking == Ranking{3, 2, 4, 0, 1})
                qualityExtreme = true;
            if (!mostDiverse || point.fDiversity < mostDiverse->fDiversity) mostDiverse = &point;
        }
        check(checks, "front quality extreme is [4,3,5,1,2]", qualityExtreme,
              "front size " + std::to_string(front.points.size()));
        bool adjacent = false;
        for (int p = 0; p + 1 < 3; ++p) {
            const int a = mostDiverse->ranking[static_cast<std::size_t>(p)];
            const int b = mostDiverse->ranking[static_cast<std::size_t>(p) + 1];
            if ((a == 2 && b == 3) || (a == 3 && b == 2)) adjacent = true;
        }
        check(checks, "diversity extreme separates the similar pair", !adjacent,
              "top of list " + rankingToString(mostDiverse->ranking));
    }

    return checks;
}

int printPaperDemo(std::ostream& out) {
    const auto checks = runPaperDemo();
    int failures = 0;
    for (const auto& c : checks) {
        out << (c.pass ? "[PASS] " : "[FAIL] ") << c.name;
        if (!c.detail.empty()) out << "  (" << c.detail << ")";
        out << '\n';
        if (!c.pass) ++failures;
    }
    out << checks.size() - static_cast<std::size_t>(failures) << "/" << checks.size()
        << " checks passed\n";
    return failures;
}

} // namespace divrank
