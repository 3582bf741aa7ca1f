#include "doctest.h"

#include <cstdlib>
#include <string>
#include <vector>

#include "divrank/benchdata.hpp"
#include "divrank/csv.hpp"
#include "divrank/kernel.hpp"
#include "divrank/moo.hpp"
#include "divrank/paperdemo.hpp"
#include "test_support.hpp"

using testsupport::TempDir;

namespace {

const std::string kCli = DIVRANK_CLI_PATH;

int run(const std::string& args) {
    const std::string cmd = "\"" + kCli + "\" " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    if (rc == -1) return -1;
    return WEXITSTATUS(rc);
}

std::string demoJsonl() {
    std::string out;
    for (const auto& item : divrank::fourIdeaDemoCorpus().items) {
        out += "{\"id\":\"" + item.id + "\",\"title\":\"" + item.title + "\",\"text\":\"" +
               item.text + "\",\"quality\":" + std::to_string(item.quality) + "}\n";
    }
    return out;
}

} // namespace

TEST_CASE("CLI pipeline end to end with byte-identical reruns") {
    TempDir dir("cli");
    testsupport::spit(dir.file("ideas.jsonl"), demoJsonl());

    // corpus build
    REQUIRE(run("corpus build --in " + dir.file("ideas.jsonl") + " --out " +
                dir.file("corpus.bin")) == 0);
    REQUIRE(run("corpus build --in " + dir.file("ideas.jsonl") + " --out " +
                dir.file("corpus2.bin")) == 0);
    CHECK(testsupport::slurp(dir.file("corpus.bin")) ==
          testsupport::slurp(dir.file("corpus2.bin")));

    // kernel build + check
    REQUIRE(run("kernel build --corpus " + dir.file("corpus.bin") + " --out " +
                dir.file("L.csv")) == 0);
    CHECK(run("kernel check " + dir.file("L.csv") + " --strict") == 0);

    // ranking commands
    REQUIRE(run("rank greedy --kernel " + dir.file("L.csv") + " --corpus " +
                dir.file("corpus.bin") + " --out " + dir.file("greedy.csv")) == 0);
    REQUIRE(run("rank quality --corpus " + dir.file("corpus.bin") + " --out " +
                dir.file("quality.csv")) == 0);
    REQUIRE(run("rank mmr --kernel " + dir.file("L.csv") + " --corpus " +
                dir.file("corpus.bin") + " --lambda 0.5 --out " + dir.file("mmr.csv")) == 0);
    CHECK(testsupport::slurp(dir.file("greedy.csv")).rfind("rank,id,quality,prefix_det", 0) ==
          0);
    CHECK(testsupport::slurp(dir.file("quality.csv")).rfind("rank,id,quality", 0) == 0);

    // front run + idempotence + select
    const std::string frontArgs = " --kernel " + dir.file("L.csv") + " --corpus " +
                                  dir.file("corpus.bin") +
                                  " --pop 20 --gens 20 --seed 3 --horizon 0 --out ";
    REQUIRE(run("front run" + frontArgs + dir.file("front.json")) == 0);
    REQUIRE(run("front run" + frontArgs + dir.file("front2.json")) == 0);
    CHECK(testsupport::slurp(dir.file("front.json")) ==
          testsupport::slurp(dir.file("front2.json")));

    REQUIRE(run("front select --in " + dir.file("front.json") + " --out " +
                dir.file("chosen.csv")) == 0);
    CHECK(testsupport::slurp(dir.file("chosen.csv")).rfind("rank,id,quality", 0) == 0);

    // analyses on the produced artifacts
    REQUIRE(run("analyze band --kernel " + dir.file("L.csv") +
                " --samples 100 --seed 1 --out " + dir.file("band.csv")) == 0);
    REQUIRE(run("analyze persistence --in " + dir.file("front.json") + " --k 2 --out " +
                dir.file("persist.csv")) == 0);
}

TEST_CASE("CLI det-curve on the idealized kernel reproduces the known curve") {
    TempDir dir("cli");
    divrank::saveKernel(divrank::fourIdeaDemoKernel(), dir.file("ideal.csv"));

    REQUIRE(run("rank greedy --kernel " + dir.file("ideal.csv") + " --out " +
                dir.file("grank.csv")) == 0);
    REQUIRE(run("analyze det-curve --kernel " + dir.file("ideal.csv") + " --rank " +
                dir.file("grank.csv") + " --out " + dir.file("curve.csv") + " --svg " +
                dir.file("curve.svg")) == 0);

    const auto rows = divrank::csv::readFile(dir.file("curve.csv"));
    REQUIRE(rows.size() == 5);
    CHECK(rows[0] == std::vector<std::string>{"k", "det"});
    CHECK(std::stod(rows[1][1]) == doctest::Approx(1.0));
    CHECK(std::stod(rows[2][1]) == doctest::Approx(1.0));
    CHECK(std::stod(rows[3][1]) == doctest::Approx(1.0));
    CHECK(std::stod(rows[4][1]) == doctest::Approx(0.6279));
    CHECK(testsupport::slurp(dir.file("curve.svg")).find("<svg") != std::string::npos);
}

TEST_CASE("CLI kernel rbf and agreement") {
    TempDir dir("cli");
    const divrank::BlobData blobs = divrank::makeBlobs(60, 3, 6.0, 0.5, 12);
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

    REQUIRE(run("kernel rbf --points " + dir.file("points.csv") + " --sigma median --out " +
                dir.file("R.csv")) == 0);
    CHECK(run("kernel check " + dir.file("R.csv") + " --strict") == 0);

    REQUIRE(run("analyze agreement --points " + dir.file("points.csv") + " --labels " +
                dir.file("labels.csv") + " --kmeans-k 3 --size-min 4 --size-max 5 " +
                "--trials 40 --seed 2 --out " + dir.file("agree.csv")) == 0);
    CHECK(testsupport::slurp(dir.file("agree.csv")).rfind("method,size,agreement", 0) == 0);
}

TEST_CASE("CLI error paths use the documented exit codes") {
    TempDir dir("cli");
    testsupport::spit(dir.file("ideas.jsonl"), demoJsonl());
    REQUIRE(run("corpus build --in " + dir.file("ideas.jsonl") + " --out " +
                dir.file("corpus.bin")) == 0);
    REQUIRE(run("kernel build --corpus " + dir.file("corpus.bin") + " --out " +
                dir.file("L.csv")) == 0);

    // validation error: odd population
    CHECK(run("front run --kernel " + dir.file("L.csv") + " --corpus " + dir.file("corpus.bin") +
              " --pop 3 --gens 5 --out " + dir.file("front.json")) == 1);

    // numeric failure: strict check of a non-PSD kernel
    testsupport::spit(dir.file("bad.csv"), "ids,a,b\na,1,2\nb,2,1\n");
    CHECK(run("kernel check " + dir.file("bad.csv") + " --strict") == 2);
    CHECK(run("kernel check " + dir.file("bad.csv")) == 0); // diagnostic only

    // IO error: missing input
    CHECK(run("corpus build --in " + dir.file("missing.jsonl") + " --out " +
              dir.file("x.bin")) == 3);

    // CLI11 usage errors
    CHECK(run("corpus build") != 0);
    CHECK(run("no-such-command") != 0);
}

TEST_CASE("CLI config file provides defaults, flags take precedence") {
    TempDir dir("cli");
    testsupport::spit(dir.file("ideas.jsonl"), demoJsonl());
    REQUIRE(run("corpus build --in " + dir.file("ideas.jsonl") + " --out " +
                dir.file("corpus.bin")) == 0);
    REQUIRE(run("kernel build --corpus " + dir.file("corpus.bin") + " --out " +
                dir.file("L.csv")) == 0);

    testsupport::spit(dir.file("run.cfg"), "pop=20\ngens=20\nseed=11\nhorizon=0\n");
    REQUIRE(run("front run --kernel " + dir.file("L.csv") + " --corpus " +
                dir.file("corpus.bin") + " --config " + dir.file("run.cfg") +
                " --gens 25 --out " + dir.file("front.json")) == 0);

    const divrank::TradeoffFront front = divrank::loadFrontJson(dir.file("front.json"));
    CHECK(front.metadata.popSize == 20);     // from config file
    CHECK(front.metadata.generations == 25); // flag overrides config
    CHECK(front.metadata.seed == 11);
}

TEST_CASE("CLI corpus build accepts CSV input and a custom stop-word list") {
    TempDir dir("cli");
    testsupport::spit(dir.file("ideas.csv"),
                      "id,title,text,quality\n"
                      "a,One,solar panels and rooftops everywhere,5\n"
                      "b,Two,wind turbines along the empty coast,3\n"
                      "c,Three,solar farms beside wind turbines,4\n");
    testsupport::spit(dir.file("stop.txt"), "and\nthe\nalong\n");
    REQUIRE(run("corpus build --in " + dir.file("ideas.csv") + " --format csv --stopwords " +
                dir.file("stop.txt") + " --out " + dir.file("c.bin")) == 0);
    REQUIRE(run("kernel build --corpus " + dir.file("c.bin") + " --out " + dir.file("L.csv")) ==
            0);
    CHECK(run("kernel check " + dir.file("L.csv") + " --strict") == 0);
}

TEST_CASE("CLI kernel rbf accepts a numeric sigma") {
    TempDir dir("cli");
    testsupport::spit(dir.file("pts.csv"), "id,x1,x2\np0,0,0\np1,1,0\np2,0,2\n");
    REQUIRE(run("kernel rbf --points " + dir.file("pts.csv") + " --sigma 0.75 --out " +
                dir.file("R.csv")) == 0);
    const auto loaded = divrank::loadKernel(dir.file("R.csv"));
    CHECK(loaded(0, 1) == doctest::Approx(std::exp(-1.0 / (2.0 * 0.75 * 0.75))));
    CHECK(run("kernel rbf --points " + dir.file("pts.csv") + " --sigma -1 --out " +
              dir.file("R2.csv")) == 1);
}

TEST_CASE("CLI bench paperdemo is green") {
    CHECK(run("bench paperdemo") == 0);
}
