#include "doctest.h"

#include "divrank/clustering.hpp"

#include "divrank/benchdata.hpp"
#include "divrank/errors.hpp"
#include "test_support.hpp"

using namespace divrank;
using testsupport::TempDir;

TEST_CASE("k = number of distinct points puts every point in its own cluster") {
    std::vector<Eigen::VectorXd> points;
    for (int i = 0; i < 6; ++i) {
        Eigen::VectorXd p(2);
        p << 3.0 * i, -1.0 * i;
        points.push_back(p);
    }
    const KMeansResult result = kmeans(points, 6, 1);
    CHECK(result.sse == doctest::Approx(0.0).epsilon(1e-18));
    std::vector<bool> seen(6, false);
    for (int label : result.partition.labels) {
        CHECK(label >= 0);
        CHECK(label < 6);
        CHECK_FALSE(seen[static_cast<std::size_t>(label)]);
        seen[static_cast<std::size_t>(label)] = true;
    }
}

TEST_CASE("two well-separated blobs are recovered exactly") {
    // 10-sigma separation; membership is geometric ground truth.
    const BlobData blobs = makeBlobs(80, 2, 10.0, 1.0, 99);
    const KMeansResult result = kmeans(blobs.points, 2, 7);

    // Same partition up to label swap.
    const int mapped = result.partition.labels[0];
    for (std::size_t i = 0; i < blobs.points.size(); ++i) {
        const int expected = blobs.labels.labels[i] == blobs.labels.labels[0] ? mapped : 1 - mapped;
        CHECK(result.partition.labels[i] == expected);
    }
}

TEST_CASE("kmeans is deterministic under a fixed seed") {
    const BlobData blobs = makeBlobs(120, 4, 6.0, 0.8, 5);
    const KMeansResult a = kmeans(blobs.points, 4, 42);
    const KMeansResult b = kmeans(blobs.points, 4, 42);
    CHECK(a.partition.labels == b.partition.labels);
    CHECK(a.sse == b.sse);
}

TEST_CASE("kmeans SSE is non-increasing across iterations") {
    const BlobData blobs = makeBlobs(150, 5, 4.0, 1.2, 17);
    const KMeansResult result = kmeans(blobs.points, 5, 3);
    REQUIRE(!result.sseHistory.empty());
    for (std::size_t i = 1; i < result.sseHistory.size(); ++i)
        CHECK(result.sseHistory[i] <= result.sseHistory[i - 1] + 1e-9);
}

TEST_CASE("kmeans input validation") {
    std::vector<Eigen::VectorXd> points(3, Eigen::VectorXd::Zero(2));
    CHECK_THROWS_AS(kmeans(points, 4, 1), ValidationError); // k > N
    // 3 coincident points: only 1 distinct value
    CHECK_THROWS_AS(kmeans(points, 2, 1), ValidationError);
    CHECK_NOTHROW(kmeans(points, 1, 1));
}

TEST_CASE("loadLabels aligns to corpus order and checks coverage") {
    TempDir dir("labels");
    const std::vector<std::string> ids = {"a", "b", "c", "d"};

    testsupport::spit(dir.file("ok.csv"), "id,label\nc,0\na,1\nd,2\nb,0\n");
    const ClusterPartition partition = loadLabels(dir.file("ok.csv"), ids);
    CHECK(partition.k == 3);
    CHECK(partition.labels == std::vector<int>{1, 0, 0, 2});

    SUBCASE("missing id is named") {
        testsupport::spit(dir.file("missing.csv"), "id,label\na,0\nb,1\nc,0\n");
        CHECK_THROWS_WITH_AS(loadLabels(dir.file("missing.csv"), ids),
                             "labels CSV is missing id \"d\"", ValidationError);
    }
    SUBCASE("non-contiguous labels rejected") {
        testsupport::spit(dir.file("gap.csv"), "id,label\na,0\nb,2\nc,0\nd,2\n");
        try {
            loadLabels(dir.file("gap.csv"), ids);
            FAIL("expected rejection");
        } catch (const ValidationError& e) {
            CHECK(std::string(e.what()).find("contiguous from 0") != std::string::npos);
        }
    }
    SUBCASE("duplicate id rejected") {
        testsupport::spit(dir.file("dup.csv"), "id,label\na,0\na,1\nb,0\nc,0\nd,0\n");
        CHECK_THROWS_AS(loadLabels(dir.file("dup.csv"), ids), ValidationError);
    }
    SUBCASE("extra id rejected") {
        testsupport::spit(dir.file("extra.csv"), "id,label\na,0\nb,1\nc,0\nd,1\nz,0\n");
        CHECK_THROWS_AS(loadLabels(dir.file("extra.csv"), ids), ValidationError);
    }
}

TEST_CASE("gold labels for a 15-blob set load with k = 15") {
    TempDir dir("labels");
    const BlobData blobs = makeBlobs(500, 15, 3.0, 0.5, 11);
    std::vector<std::string> ids;
    std::string csv = "id,label\n";
    for (std::size_t i = 0; i < blobs.points.size(); ++i) {
        ids.push_back("p" + std::to_string(i));
        csv += ids.back() + "," + std::to_string(blobs.labels.labels[i]) + "\n";
    }
    testsupport::spit(dir.file("gold.csv"), csv);
    const ClusterPartition partition = loadLabels(dir.file("gold.csv"), ids);
    CHECK(partition.k == 15);
    CHECK(partition.labels == blobs.labels.labels);
}
