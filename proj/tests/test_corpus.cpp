#include "doctest.h"

#include "divrank/corpus.hpp"

#include <cmath>

#include "divrank/benchdata.hpp"
#include "divrank/errors.hpp"
#include "divrank/kernel.hpp"
#include "test_support.hpp"

using namespace divrank;
using testsupport::TempDir;

namespace {

std::string jsonlRecord(const std::string& id, const std::string& text, double quality) {
    return "{\"id\":\"" + id + "\",\"text\":\"" + text +
           "\",\"quality\":" + std::to_string(quality) + "}\n";
}

} // namespace

TEST_CASE("ingest JSONL preserves order and qualities") {
    TempDir dir("corpus");
    testsupport::spit(dir.file("ideas.jsonl"), jsonlRecord("a", "compost the city", 20) +
                                                   jsonlRecord("b", "curbside compost", 12) +
                                                   jsonlRecord("c", "food festival", 9) +
                                                   jsonlRecord("d", "online farm", 3));
    const Corpus corpus = ingestCorpus(dir.file("ideas.jsonl"), CorpusFormat::jsonl);
    CHECK(corpus.size() == 4);
    CHECK(corpus.ids() == std::vector<std::string>{"a", "b", "c", "d"});
    CHECK(corpus.qualities() == std::vector<double>{20, 12, 9, 3});
}

TEST_CASE("ingest rejects degenerate inputs") {
    TempDir dir("corpus");

    SUBCASE("empty file") {
        testsupport::spit(dir.file("empty.jsonl"), "");
        CHECK_THROWS_WITH_AS(ingestCorpus(dir.file("empty.jsonl"), CorpusFormat::jsonl),
                             "corpus must contain at least 2 items", ValidationError);
    }
    SUBCASE("single record") {
        testsupport::spit(dir.file("one.jsonl"), jsonlRecord("a", "x y", 1));
        CHECK_THROWS_AS(ingestCorpus(dir.file("one.jsonl"), CorpusFormat::jsonl),
                        ValidationError);
    }
    SUBCASE("duplicate ids are named") {
        testsupport::spit(dir.file("dup.jsonl"), jsonlRecord("a", "x", 1) +
                                                     jsonlRecord("a", "y", 2));
        CHECK_THROWS_WITH_AS(ingestCorpus(dir.file("dup.jsonl"), CorpusFormat::jsonl),
                             "duplicate item id \"a\" (records 1 and 2)", ValidationError);
    }
    SUBCASE("missing quality names the record") {
        testsupport::spit(dir.file("noq.jsonl"),
                          "{\"id\":\"a\",\"text\":\"x\"}\n" + jsonlRecord("b", "y", 1));
        try {
            ingestCorpus(dir.file("noq.jsonl"), CorpusFormat::jsonl);
            FAIL("expected rejection");
        } catch (const ValidationError& e) {
            CHECK(std::string(e.what()).find("record 1") != std::string::npos);
            CHECK(std::string(e.what()).find("quality") != std::string::npos);
        }
    }
    SUBCASE("negative quality rejected") {
        testsupport::spit(dir.file("neg.jsonl"),
                          jsonlRecord("a", "x", 1) + jsonlRecord("b", "y", -2));
        CHECK_THROWS_AS(ingestCorpus(dir.file("neg.jsonl"), CorpusFormat::jsonl),
                        ValidationError);
    }
    SUBCASE("missing file is an IO error") {
        CHECK_THROWS_AS(ingestCorpus(dir.file("nope.jsonl"), CorpusFormat::jsonl), IoError);
    }
}

TEST_CASE("ingest CSV honors RFC-4180 quoting") {
    TempDir dir("corpus");
    testsupport::spit(dir.file("ideas.csv"),
                      "id,title,text,quality\n"
                      "a,\"Compost, again\",\"line one\nline two\",20\n"
                      "b,plain,\"he said \"\"hi\"\"\",12\n");
    const Corpus corpus = ingestCorpus(dir.file("ideas.csv"), CorpusFormat::csv);
    CHECK(corpus.size() == 2);
    CHECK(corpus.items[0].title == "Compost, again");
    CHECK(corpus.items[0].text == "line one\nline two");
    CHECK(corpus.items[1].text == "he said \"hi\"");
    CHECK(corpus.qualities() == std::vector<double>{20, 12});

    testsupport::spit(dir.file("badheader.csv"), "id,quality\na,1\nb,2\n");
    CHECK_THROWS_AS(ingestCorpus(dir.file("badheader.csv"), CorpusFormat::csv), ValidationError);
}

TEST_CASE("vectorize: identical documents get identical rows, disjoint ones orthogonal rows") {
    Corpus corpus;
    corpus.items = {{"a", "", "solar panel rooftop energy", 1},
                    {"b", "", "solar panel rooftop energy", 2},
                    {"c", "", "river dolphin habitat water", 3}};
    vectorizeCorpus(corpus);
    const SimilarityKernel kernel = cosineKernel(corpus);
    CHECK(kernel(0, 1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(kernel(0, 2) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(kernel(1, 2) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("vectorize drops terms above the 90% document-frequency cut") {
    // "compost" appears in all 10 documents (df 100% > 90%); the other terms
    // appear in one or two documents each, hand-counted below.
    Corpus corpus;
    for (int i = 0; i < 10; ++i) {
        Item item;
        item.id = "d" + std::to_string(i);
        item.text = "compost pair" + std::to_string(i / 2) + " solo" + std::to_string(i);
        item.quality = 1.0;
        corpus.items.push_back(item);
    }
    vectorizeCorpus(corpus);
    for (const auto& term : corpus.vocabulary) CHECK(term != "compost");
    // pair0..pair4 have df 2/10, solo0..solo9 df 1/10; all within [1%, 90%]
    CHECK(corpus.vocabulary.size() == 15);
}

TEST_CASE("vectorize errors") {
    Corpus corpus;
    corpus.items = {{"a", "", "", 1}, {"b", "", "", 2}};
    CHECK_THROWS_WITH_AS(vectorizeCorpus(corpus), "cannot vectorize: all items have empty text",
                         ValidationError);

    // Every token is a stop word: vocabulary comes out empty.
    Corpus stopOnly;
    stopOnly.items = {{"a", "", "the and of", 1}, {"b", "", "was were", 2}};
    CHECK_THROWS_AS(vectorizeCorpus(stopOnly), ValidationError);
}

TEST_CASE("vectorize properties: unit rows, determinism, zero rows for empty items") {
    Corpus corpus;
    corpus.items = {{"a", "Solar grid", "solar panels on every roof in the city", 4},
                    {"b", "", "wind turbine farms near the coast line", 2},
                    {"c", "", "", 1}, // degenerate: no text at all
                    {"d", "Compost", "city compost pickup with community gardens", 9}};
    vectorizeCorpus(corpus);

    for (int i = 0; i < corpus.size(); ++i) {
        const double norm = corpus.tfidf.row(i).norm();
        if (i == 2)
            CHECK(norm == 0.0);
        else
            CHECK(norm == doctest::Approx(1.0).epsilon(1e-9));
    }

    Corpus again;
    again.items = corpus.items;
    vectorizeCorpus(again);
    CHECK(again.vocabulary == corpus.vocabulary);
    CHECK((again.tfidf - corpus.tfidf).cwiseAbs().maxCoeff() == 0.0); // bit-identical

    // cosineKernel names the degenerate item.
    try {
        cosineKernel(corpus);
        FAIL("expected rejection");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("\"c\"") != std::string::npos);
    }
}

TEST_CASE("shipped benchmark corpus matches its generator") {
    TempDir dir("bench");
    const Corpus generated =
        makeTopicCorpus(kBenchmarkItems, kBenchmarkTopics, kBenchmarkSeed);
    writeCorpusJsonl(generated, dir.file("regen.jsonl"));
    CHECK(testsupport::slurp(dir.file("regen.jsonl")) ==
          testsupport::slurp(std::string(DIVRANK_SOURCE_DIR) +
                             "/data/benchmark/ideas_200.jsonl"));
}

TEST_CASE("binary corpus container round-trips byte-identically") {
    TempDir dir("corpus");
    Corpus corpus;
    corpus.items = {{"a", "T", "solar city energy", 4.25},
                    {"b", "", "wind farm energy", 2.5},
                    {"c", "", "compost city gardens", 0.0}};
    vectorizeCorpus(corpus);

    saveCorpusBinary(corpus, dir.file("c.bin"));
    const Corpus loaded = loadCorpusBinary(dir.file("c.bin"));
    CHECK(loaded.ids() == corpus.ids());
    CHECK(loaded.qualities() == corpus.qualities());
    CHECK(loaded.vocabulary == corpus.vocabulary);
    CHECK((loaded.tfidf - corpus.tfidf).cwiseAbs().maxCoeff() == 0.0);

    saveCorpusBinary(loaded, dir.file("c2.bin"));
    CHECK(testsupport::slurp(dir.file("c.bin")) == testsupport::slurp(dir.file("c2.bin")));

    testsupport::spit(dir.file("junk.bin"), "not a corpus");
    CHECK_THROWS_AS(loadCorpusBinary(dir.file("junk.bin")), ValidationError);
}
