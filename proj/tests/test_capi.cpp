#include "doctest.h"

#include "divrank/divrank.h"

#include <cstring>
#include <string>

#include "divrank/benchdata.hpp"
#include "divrank/kernel.hpp"
#include "divrank/paperdemo.hpp"
#include "test_support.hpp"

using testsupport::TempDir;

namespace {

std::string demoJsonl() {
    std::string out;
    for (const auto& item : divrank::fourIdeaDemoCorpus().items) {
        out += "{\"id\":\"" + item.id + "\",\"title\":\"" + item.title + "\",\"text\":\"" +
               item.text + "\",\"quality\":" + std::to_string(item.quality) + "}\n";
    }
    return out;
}

} // namespace

TEST_CASE("C API corpus lifecycle and error codes") {
    TempDir dir("capi");

    dr_corpus* corpus = nullptr;
    CHECK(dr_corpus_read("/no/such/file.jsonl", nullptr, &corpus) == DR_ERROR_IO);
    CHECK(std::strlen(dr_last_error()) > 0);

    testsupport::spit(dir.file("ideas.jsonl"), demoJsonl());
    REQUIRE(dr_corpus_read(dir.file("ideas.jsonl").c_str(), "jsonl", &corpus) == DR_OK);
    CHECK(std::strlen(dr_last_error()) == 0);
    CHECK(dr_corpus_size(corpus) == 4);
    CHECK(std::string(dr_corpus_id(corpus, 0)) == "compost-city");
    CHECK(dr_corpus_quality(corpus, 0) == 20.0);
    CHECK(dr_corpus_vectorized(corpus) == 0);

    REQUIRE(dr_corpus_vectorize(corpus, nullptr) == DR_OK);
    CHECK(dr_corpus_vectorized(corpus) == 1);

    REQUIRE(dr_corpus_save(corpus, dir.file("c.bin").c_str()) == DR_OK);
    dr_corpus* reopened = nullptr;
    REQUIRE(dr_corpus_open(dir.file("c.bin").c_str(), &reopened) == DR_OK);
    CHECK(dr_corpus_size(reopened) == 4);
    CHECK(dr_corpus_vectorized(reopened) == 1);

    CHECK(dr_corpus_read(dir.file("ideas.jsonl").c_str(), "parquet", &corpus) ==
          DR_ERROR_VALIDATION);

    dr_corpus_free(corpus);
    dr_corpus_free(reopened);
    dr_corpus_free(nullptr); // no-op
}

TEST_CASE("C API end-to-end: kernel, rankings, front, analyses") {
    TempDir dir("capi");
    testsupport::spit(dir.file("ideas.jsonl"), demoJsonl());

    dr_corpus* corpus = nullptr;
    REQUIRE(dr_corpus_read(dir.file("ideas.jsonl").c_str(), nullptr, &corpus) == DR_OK);
    REQUIRE(dr_corpus_vectorize(corpus, nullptr) == DR_OK);

    dr_kernel* kernel = nullptr;
    REQUIRE(dr_kernel_cosine(corpus, &kernel) == DR_OK);
    CHECK(dr_kernel_size(kernel) == 4);
    CHECK(dr_kernel_entry(kernel, 0, 0) == 1.0);
    CHECK(std::string(dr_kernel_id(kernel, 1)) == "compost-curbside");

    dr_kernel_report report;
    REQUIRE(dr_kernel_validate(kernel, &report) == DR_OK);
    CHECK(report.symmetric == 1);
    CHECK(report.unit_diagonal == 1);
    CHECK(report.psd == 1);

    REQUIRE(dr_kernel_save(kernel, dir.file("L.csv").c_str()) == DR_OK);
    dr_kernel* loaded = nullptr;
    REQUIRE(dr_kernel_load(dir.file("L.csv").c_str(), 1, &loaded) == DR_OK);
    CHECK(dr_kernel_entry(loaded, 0, 1) == dr_kernel_entry(kernel, 0, 1));

    dr_ranking* greedy = nullptr;
    REQUIRE(dr_rank_greedy(kernel, corpus, &greedy) == DR_OK);
    CHECK(dr_ranking_size(greedy) == 4);
    CHECK(dr_ranking_item(greedy, 99) == -1);
    REQUIRE(dr_ranking_save_csv(greedy, corpus, kernel, dir.file("rank.csv").c_str()) == DR_OK);

    dr_ranking* fromCsv = nullptr;
    REQUIRE(dr_ranking_load_csv(dir.file("rank.csv").c_str(), kernel, &fromCsv) == DR_OK);
    for (int p = 0; p < 4; ++p) CHECK(dr_ranking_item(fromCsv, p) == dr_ranking_item(greedy, p));

    dr_ranking* quality = nullptr;
    REQUIRE(dr_rank_quality(corpus, &quality) == DR_OK);
    CHECK(dr_ranking_item(quality, 0) == 0);

    dr_ranking* mmr = nullptr;
    REQUIRE(dr_rank_mmr(kernel, corpus, 0.0, &mmr) == DR_OK);
    CHECK(dr_rank_mmr(kernel, corpus, 1.5, &mmr) == DR_ERROR_VALIDATION);

    dr_front_config config;
    dr_front_config_init(&config);
    CHECK(config.pop_size == 500);
    CHECK(config.generations == 1000);
    config.pop_size = 20;
    config.generations = 30;
    config.seed = 5;
    config.horizon = 0;

    dr_front* front = nullptr;
    REQUIRE(dr_front_run(kernel, corpus, &config, &front) == DR_OK);
    CHECK(dr_front_size(front) >= 1);

    double fq = -1, fd = 0, nq = -1, nd = -1;
    REQUIRE(dr_front_point(front, 0, &fq, &fd, &nq, &nd) == DR_OK);
    CHECK(fq == 0.0); // quality extreme seeded

    REQUIRE(dr_front_save_json(front, dir.file("front.json").c_str()) == DR_OK);
    dr_front* reloaded = nullptr;
    REQUIRE(dr_front_load_json(dir.file("front.json").c_str(), &reloaded) == DR_OK);
    CHECK(dr_front_size(reloaded) == dr_front_size(front));

    int chosen = -1;
    REQUIRE(dr_front_select(reloaded, &chosen) == DR_OK);
    CHECK(chosen >= 0);
    CHECK(chosen < dr_front_size(reloaded));
    REQUIRE(dr_front_save_selected_csv(reloaded, dir.file("chosen.csv").c_str()) == DR_OK);
    CHECK(testsupport::slurp(dir.file("chosen.csv")).rfind("rank,id,quality", 0) == 0);

    REQUIRE(dr_front_scatter_svg(front, dir.file("front.svg").c_str()) == DR_OK);
    CHECK(testsupport::slurp(dir.file("front.svg")).find("<svg") != std::string::npos);

    REQUIRE(dr_analyze_det_curve(kernel, greedy, 4, dir.file("curve.csv").c_str(),
                                 dir.file("curve.svg").c_str()) == DR_OK);
    CHECK(testsupport::slurp(dir.file("curve.csv")).rfind("k,det", 0) == 0);

    const double percentiles[] = {5.0, 95.0};
    int collapse = -1;
    REQUIRE(dr_analyze_band(kernel, 120, percentiles, 2, 9, 4, dir.file("band.csv").c_str(),
                            nullptr, &collapse) == DR_OK);
    CHECK(testsupport::slurp(dir.file("band.csv")).rfind("k,p5,p95", 0) == 0);

    int unique = 0;
    double compression = 0.0;
    REQUIRE(dr_analyze_persistence(front, 2, dir.file("persist.csv").c_str(), &unique,
                                   &compression) == DR_OK);
    CHECK(unique >= 2);
    CHECK(compression > 0.0);

    dr_front_free(front);
    dr_front_free(reloaded);
    dr_ranking_free(greedy);
    dr_ranking_free(fromCsv);
    dr_ranking_free(quality);
    dr_ranking_free(mmr);
    dr_kernel_free(kernel);
    dr_kernel_free(loaded);
    dr_corpus_free(corpus);
}

TEST_CASE("C API agreement experiment writes the method/size table") {
    TempDir dir("capi");
    const divrank::BlobData blobs = divrank::makeBlobs(90, 3, 6.0, 0.6, 77);
    std::string pointsCsv = "id,x1,x2\n";
    std::string labelsCsv = "id,label\n";
    for (std::size_t i = 0; i < blobs.points.size(); ++i) {
        const std::string id = "p" + std::to_string(i);
        pointsCsv += id + "," + std::to_string(blobs.points[i](0)) + "," +
                     std::to_string(blobs.points[i](1)) + "\n";
        labelsCsv += id + "," + std::to_string(blobs.labels.labels[i]) + "\n";
    }
    testsupport::spit(dir.file("points.csv"), pointsCsv);
    testsupport::spit(dir.file("labels.csv"), labelsCsv);

    const int ks[] = {1, 3};
    REQUIRE(dr_analyze_agreement(dir.file("points.csv").c_str(), dir.file("labels.csv").c_str(),
                                 "median", ks, 2, 4, 6, 50, 4,
                                 dir.file("agreement.csv").c_str()) == DR_OK);
    const std::string content = testsupport::slurp(dir.file("agreement.csv"));
    CHECK(content.rfind("method,size,agreement", 0) == 0);
    CHECK(content.find("dpp,4,") != std::string::npos);
    CHECK(content.find("cluster-gold,6,") != std::string::npos);
    CHECK(content.find("cluster-kmeans3,5,") != std::string::npos);
}

TEST_CASE("C API rejects misaligned kernel/corpus pairs") {
    TempDir dir("capi");
    testsupport::spit(dir.file("ideas.jsonl"), demoJsonl());
    dr_corpus* corpus = nullptr;
    REQUIRE(dr_corpus_read(dir.file("ideas.jsonl").c_str(), nullptr, &corpus) == DR_OK);

    divrank::saveKernel(testsupport::randomCosineKernel(4, 3, 5), dir.file("other.csv"));
    dr_kernel* kernel = nullptr;
    REQUIRE(dr_kernel_load(dir.file("other.csv").c_str(), 0, &kernel) == DR_OK);

    dr_ranking* ranking = nullptr;
    CHECK(dr_rank_mmr(kernel, corpus, 0.5, &ranking) == DR_ERROR_VALIDATION);
    CHECK(std::string(dr_last_error()).find("ids") != std::string::npos);

    dr_front_config config;
    dr_front_config_init(&config);
    dr_front* front = nullptr;
    CHECK(dr_front_run(kernel, corpus, &config, &front) == DR_ERROR_VALIDATION);

    dr_kernel_free(kernel);
    dr_corpus_free(corpus);
}

TEST_CASE("C API null-handle hygiene") {
    dr_kernel_report report;
    CHECK(dr_kernel_validate(nullptr, &report) == DR_ERROR_VALIDATION);
    CHECK(std::string(dr_last_error()).find("null") != std::string::npos);

    dr_ranking* ranking = nullptr;
    CHECK(dr_rank_greedy(nullptr, nullptr, &ranking) == DR_ERROR_VALIDATION);

    CHECK(dr_front_size(nullptr) == 0);
    CHECK(dr_ranking_size(nullptr) == 0);
    CHECK(dr_corpus_id(nullptr, 0) == nullptr);
}
