// divrank command-line interface. All engine work goes through the shared
// library's C API (divrank.h); this file is flag parsing and printing.

#include <cstdio>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "divrank/divrank.h"

namespace {

int fail(dr_status status) {
    std::fprintf(stderr, "divrank: %s\n", dr_last_error());
    return static_cast<int>(status);
}

#define DR_TRY(call)                                          \
    do {                                                      \
        const dr_status status_ = (call);                     \
        if (status_ != DR_OK) return fail(status_);           \
    } while (0)

struct CorpusHandle {
    dr_corpus* ptr = nullptr;
    ~CorpusHandle() { dr_corpus_free(ptr); }
};
struct KernelHandle {
    dr_kernel* ptr = nullptr;
    ~KernelHandle() { dr_kernel_free(ptr); }
};
struct RankingHandle {
    dr_ranking* ptr = nullptr;
    ~RankingHandle() { dr_ranking_free(ptr); }
};
struct FrontHandle {
    dr_front* ptr = nullptr;
    ~FrontHandle() { dr_front_free(ptr); }
};

void addConfigFile(CLI::App* cmd, std::string& sink) {
    cmd->add_option("--config", sink,
                    "flat key=value file with option defaults; command-line flags take "
                    "precedence");
}

// Flat key=value config support: the pairs are appended to argv as
// --key=value tokens, and every scalar option takes the first occurrence, so
// anything given on the command line wins. Unknown keys fail parsing like any
// unknown flag would.
std::vector<std::string> expandConfigArgs(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            break;
        }
    }
    if (path.empty()) return args;
    std::ifstream in(path);
    if (!in) return args; // let the subcommand's own validation report it
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos || eq == 0) continue;
        args.push_back("--" + line.substr(0, eq) + "=" + line.substr(eq + 1));
    }
    return args;
}

void preferCommandLine(CLI::App* app) {
    for (CLI::Option* opt : app->get_options()) {
        if (opt->get_expected_max() == 1)
            opt->multi_option_policy(CLI::MultiOptionPolicy::TakeFirst);
    }
    for (CLI::App* sub : app->get_subcommands({})) preferCommandLine(sub);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"divrank: quality/diversity ranking engine"};
    app.require_subcommand(1);
    std::string configPath;

    // ---- corpus build -----------------------------------------------------
    auto* corpusCmd = app.add_subcommand("corpus", "corpus operations")->require_subcommand(1);
    struct {
        std::string in, out, format, stopwords;
        bool noVectorize = false;
    } corpusBuildArgs;
    {
        auto* cmd = corpusCmd->add_subcommand("build", "ingest and vectorize a corpus");
        cmd->add_option("--in", corpusBuildArgs.in, "input ideas file")->required();
        cmd->add_option("--out", corpusBuildArgs.out, "output corpus container")->required();
        cmd->add_option("--format", corpusBuildArgs.format, "jsonl or csv (default: by extension)");
        cmd->add_option("--stopwords", corpusBuildArgs.stopwords,
                        "stop-word list file (default: built-in)");
        cmd->add_flag("--no-vectorize", corpusBuildArgs.noVectorize,
                      "skip TF-IDF (for corpora paired with an external kernel)");
        addConfigFile(cmd, configPath);
        cmd->callback([&]() -> void {});
    }

    // ---- kernel ------------------------------------------------------------
    auto* kernelCmd = app.add_subcommand("kernel", "similarity kernel operations")
                          ->require_subcommand(1);
    struct {
        std::string corpus, out;
    } kernelBuildArgs;
    {
        auto* cmd = kernelCmd->add_subcommand("build", "cosine kernel from a vectorized corpus");
        cmd->add_option("--corpus", kernelBuildArgs.corpus, "corpus container")->required();
        cmd->add_option("--out", kernelBuildArgs.out, "output kernel CSV")->required();
        addConfigFile(cmd, configPath);
    }
    struct {
        std::string path;
        bool strict = false;
    } kernelCheckArgs;
    {
        auto* cmd = kernelCmd->add_subcommand("check", "validate a kernel CSV");
        cmd->add_option("path", kernelCheckArgs.path, "kernel CSV")->required();
        cmd->add_flag("--strict", kernelCheckArgs.strict, "fail (exit 2) on validation errors");
        addConfigFile(cmd, configPath);
    }
    struct {
        std::string points, sigma = "median", out;
    } kernelRbfArgs;
    {
        auto* cmd = kernelCmd->add_subcommand("rbf", "RBF kernel from an embedding CSV");
        cmd->add_option("--points", kernelRbfArgs.points, "points CSV (id,x1,..,xd)")->required();
        cmd->add_option("--sigma", kernelRbfArgs.sigma, "bandwidth or \"median\"");
        cmd->add_option("--out", kernelRbfArgs.out, "output kernel CSV")->required();
        addConfigFile(cmd, configPath);
    }

    // ---- rank ---------------------------------------------------------------
    auto* rankCmd = app.add_subcommand("rank", "single-objective rankings")->require_subcommand(1);
    struct {
        std::string kernel, corpus, out;
        double lambda = 0.0;
    } rankArgs;
    auto addRankCommon = [&](CLI::App* cmd, bool kernelRequired, bool corpusRequired) {
        auto* k = cmd->add_option("--kernel", rankArgs.kernel, "kernel CSV");
        auto* c = cmd->add_option("--corpus", rankArgs.corpus, "corpus container");
        if (kernelRequired) k->required();
        if (corpusRequired) c->required();
        cmd->add_option("--out", rankArgs.out, "output ranking CSV")->required();
        addConfigFile(cmd, configPath);
    };
    auto* rankGreedy = rankCmd->add_subcommand("greedy", "determinant-greedy diverse ranking");
    addRankCommon(rankGreedy, true, false);
    auto* rankQuality = rankCmd->add_subcommand("quality", "sort by descending quality");
    addRankCommon(rankQuality, false, true);
    auto* rankMmr = rankCmd->add_subcommand("mmr", "maximal marginal relevance baseline");
    addRankCommon(rankMmr, true, true);
    rankMmr->add_option("--lambda", rankArgs.lambda, "relevance weight in [0,1]")
        ->check(CLI::Range(0.0, 1.0));

    // ---- front ----------------------------------------------------------------
    auto* frontCmd = app.add_subcommand("front", "quality/diversity trade-off front")
                         ->require_subcommand(1);
    struct {
        std::string kernel, corpus, out, svg;
        dr_front_config config;
    } frontRunArgs;
    dr_front_config_init(&frontRunArgs.config);
    {
        auto* cmd = frontCmd->add_subcommand("run", "evolve the trade-off front");
        cmd->add_option("--kernel", frontRunArgs.kernel, "kernel CSV")->required();
        cmd->add_option("--corpus", frontRunArgs.corpus, "corpus container")->required();
        cmd->add_option("--pop", frontRunArgs.config.pop_size, "population size (even, >= 4)");
        cmd->add_option("--gens", frontRunArgs.config.generations, "generations");
        cmd->add_option("--pc", frontRunArgs.config.p_crossover, "crossover rate");
        cmd->add_option("--pm", frontRunArgs.config.p_mutation, "mutation rate");
        cmd->add_option("--seed", frontRunArgs.config.seed, "random seed");
        cmd->add_option("--horizon", frontRunArgs.config.horizon,
                        "diversity horizon (<= 0: full list)");
        cmd->add_option("--threads", frontRunArgs.config.threads, "fitness worker threads");
        cmd->add_flag("--archive", frontRunArgs.config.accumulate_archive,
                      "front over all generations instead of the final population");
        cmd->add_option("--svg", frontRunArgs.svg, "also write a front scatter SVG");
        cmd->add_option("--out", frontRunArgs.out, "output front JSON")->required();
        addConfigFile(cmd, configPath);
    }
    struct {
        std::string in, out;
    } frontSelectArgs;
    {
        auto* cmd = frontCmd->add_subcommand("select",
                                             "indifference-curve pick from a front JSON");
        cmd->add_option("--in", frontSelectArgs.in, "front JSON")->required();
        cmd->add_option("--out", frontSelectArgs.out, "output ranking CSV")->required();
        addConfigFile(cmd, configPath);
    }

    // ---- analyze -----------------------------------------------------------------
    auto* analyzeCmd = app.add_subcommand("analyze", "diagnostics")->require_subcommand(1);
    struct {
        std::string kernel, rank, out, svg;
        int maxK = 0;
    } detCurveArgs;
    {
        auto* cmd = analyzeCmd->add_subcommand("det-curve", "prefix determinants of a ranking");
        cmd->add_option("--kernel", detCurveArgs.kernel, "kernel CSV")->required();
        cmd->add_option("--rank", detCurveArgs.rank, "ranking CSV")->required();
        cmd->add_option("--max-k", detCurveArgs.maxK, "depth (default: N)");
        cmd->add_option("--svg", detCurveArgs.svg, "also write a curve SVG");
        cmd->add_option("--out", detCurveArgs.out, "output CSV")->required();
        addConfigFile(cmd, configPath);
    }
    struct {
        std::string kernel, out, svg;
        int samples = 5000;
        int maxK = 0;
        unsigned long long seed = 42;
        std::vector<double> percentiles = {5.0, 95.0};
    } bandArgs;
    {
        auto* cmd = analyzeCmd->add_subcommand("band",
                                               "random-permutation det percentile bands");
        cmd->add_option("--kernel", bandArgs.kernel, "kernel CSV")->required();
        cmd->add_option("--samples", bandArgs.samples, "random permutations (>= 100)");
        cmd->add_option("--percentiles", bandArgs.percentiles, "percentiles")->delimiter(',');
        cmd->add_option("--seed", bandArgs.seed, "random seed");
        cmd->add_option("--max-k", bandArgs.maxK, "depth (default: N)");
        cmd->add_option("--svg", bandArgs.svg, "also write a band SVG");
        cmd->add_option("--out", bandArgs.out, "output CSV")->required();
        addConfigFile(cmd, configPath);
    }
    struct {
        std::string in, out;
        int k = 10;
    } persistenceArgs;
    {
        auto* cmd = analyzeCmd->add_subcommand("persistence",
                                               "top-k id persistence across a front");
        cmd->add_option("--in", persistenceArgs.in, "front JSON")->required();
        cmd->add_option("--k", persistenceArgs.k, "prefix depth");
        cmd->add_option("--out", persistenceArgs.out, "output CSV")->required();
        addConfigFile(cmd, configPath);
    }
    struct {
        std::string points, labels, sigma = "median", out;
        std::vector<int> kmeansKs;
        int sizeMin = 2, sizeMax = 20, trials = 500;
        unsigned long long seed = 42;
    } agreementArgs;
    {
        auto* cmd = analyzeCmd->add_subcommand("agreement",
                                               "entropy-agreement comparison of diversity scores");
        cmd->add_option("--points", agreementArgs.points, "points CSV (id,x1,..,xd)")->required();
        cmd->add_option("--labels", agreementArgs.labels, "gold labels CSV (id,label)")
            ->required();
        cmd->add_option("--sigma", agreementArgs.sigma, "RBF bandwidth or \"median\"");
        cmd->add_option("--kmeans-k", agreementArgs.kmeansKs,
                        "also score cluster coverage under built-in k-means with this k "
                        "(repeatable)");
        cmd->add_option("--size-min", agreementArgs.sizeMin, "smallest set size");
        cmd->add_option("--size-max", agreementArgs.sizeMax, "largest set size");
        cmd->add_option("--trials", agreementArgs.trials, "comparisons per size");
        cmd->add_option("--seed", agreementArgs.seed, "random seed");
        cmd->add_option("--out", agreementArgs.out, "output CSV")->required();
        addConfigFile(cmd, configPath);
    }

    // ---- bench -----------------------------------------------------------------
    auto* benchCmd = app.add_subcommand("bench", "built-in benchmarks")->require_subcommand(1);
    auto* paperdemoCmd =
        benchCmd->add_subcommand("paperdemo", "run the built-in worked examples");

    preferCommandLine(&app);
    const std::vector<std::string> args = expandConfigArgs(argc, argv);
    std::vector<const char*> argPtrs;
    argPtrs.push_back(argv[0]);
    for (const auto& arg : args) argPtrs.push_back(arg.c_str());
    try {
        app.parse(static_cast<int>(argPtrs.size()), argPtrs.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1; // usage problems exit 1
    }

    if (corpusCmd->get_subcommand("build")->parsed()) {
        CorpusHandle corpus;
        const char* format =
            corpusBuildArgs.format.empty() ? nullptr : corpusBuildArgs.format.c_str();
        DR_TRY(dr_corpus_read(corpusBuildArgs.in.c_str(), format, &corpus.ptr));
        if (!corpusBuildArgs.noVectorize) {
            const char* stopwords =
                corpusBuildArgs.stopwords.empty() ? nullptr : corpusBuildArgs.stopwords.c_str();
            DR_TRY(dr_corpus_vectorize(corpus.ptr, stopwords));
        }
        DR_TRY(dr_corpus_save(corpus.ptr, corpusBuildArgs.out.c_str()));
        std::printf("corpus: %d items%s -> %s\n", dr_corpus_size(corpus.ptr),
                    corpusBuildArgs.noVectorize ? "" : " (vectorized)",
                    corpusBuildArgs.out.c_str());
        return 0;
    }

    if (kernelCmd->get_subcommand("build")->parsed()) {
        CorpusHandle corpus;
        KernelHandle kernel;
        DR_TRY(dr_corpus_open(kernelBuildArgs.corpus.c_str(), &corpus.ptr));
        DR_TRY(dr_kernel_cosine(corpus.ptr, &kernel.ptr));
        DR_TRY(dr_kernel_save(kernel.ptr, kernelBuildArgs.out.c_str()));
        std::printf("kernel: %d x %d -> %s\n", dr_kernel_size(kernel.ptr),
                    dr_kernel_size(kernel.ptr), kernelBuildArgs.out.c_str());
        return 0;
    }

    if (kernelCmd->get_subcommand("check")->parsed()) {
        KernelHandle kernel;
        DR_TRY(dr_kernel_load(kernelCheckArgs.path.c_str(), kernelCheckArgs.strict ? 1 : 0,
                              &kernel.ptr));
        dr_kernel_report report;
        DR_TRY(dr_kernel_validate(kernel.ptr, &report));
        std::printf("symmetric:      %s\n", report.symmetric ? "yes" : "no");
        std::printf("unit diagonal:  %s\n", report.unit_diagonal ? "yes" : "no");
        std::printf("psd:            %s\n", report.psd ? "yes" : "no");
        std::printf("min eigenvalue: %.12g\n", report.min_eigenvalue);
        return 0;
    }

    if (kernelCmd->get_subcommand("rbf")->parsed()) {
        KernelHandle kernel;
        DR_TRY(dr_kernel_rbf_from_points(kernelRbfArgs.points.c_str(),
                                         kernelRbfArgs.sigma.c_str(), &kernel.ptr));
        DR_TRY(dr_kernel_save(kernel.ptr, kernelRbfArgs.out.c_str()));
        std::printf("kernel: %d x %d -> %s\n", dr_kernel_size(kernel.ptr),
                    dr_kernel_size(kernel.ptr), kernelRbfArgs.out.c_str());
        return 0;
    }

    if (rankCmd->parsed()) {
        CorpusHandle corpus;
        KernelHandle kernel;
        if (!rankArgs.corpus.empty())
            DR_TRY(dr_corpus_open(rankArgs.corpus.c_str(), &corpus.ptr));
        if (!rankArgs.kernel.empty())
            DR_TRY(dr_kernel_load(rankArgs.kernel.c_str(), 0, &kernel.ptr));
        RankingHandle ranking;
        if (rankGreedy->parsed())
            DR_TRY(dr_rank_greedy(kernel.ptr, corpus.ptr, &ranking.ptr));
        else if (rankQuality->parsed())
            DR_TRY(dr_rank_quality(corpus.ptr, &ranking.ptr));
        else
            DR_TRY(dr_rank_mmr(kernel.ptr, corpus.ptr, rankArgs.lambda, &ranking.ptr));
        DR_TRY(dr_ranking_save_csv(ranking.ptr, corpus.ptr, kernel.ptr, rankArgs.out.c_str()));
        std::printf("ranking: %d items -> %s\n", dr_ranking_size(ranking.ptr),
                    rankArgs.out.c_str());
        return 0;
    }

    if (frontCmd->get_subcommand("run")->parsed()) {
        CorpusHandle corpus;
        KernelHandle kernel;
        FrontHandle front;
        DR_TRY(dr_corpus_open(frontRunArgs.corpus.c_str(), &corpus.ptr));
        DR_TRY(dr_kernel_load(frontRunArgs.kernel.c_str(), 0, &kernel.ptr));
        DR_TRY(dr_front_run(kernel.ptr, corpus.ptr, &frontRunArgs.config, &front.ptr));
        DR_TRY(dr_front_save_json(front.ptr, frontRunArgs.out.c_str()));
        if (!frontRunArgs.svg.empty())
            DR_TRY(dr_front_scatter_svg(front.ptr, frontRunArgs.svg.c_str()));
        std::printf("front: %d points -> %s\n", dr_front_size(front.ptr),
                    frontRunArgs.out.c_str());
        return 0;
    }

    if (frontCmd->get_subcommand("select")->parsed()) {
        FrontHandle front;
        DR_TRY(dr_front_load_json(frontSelectArgs.in.c_str(), &front.ptr));
        int index = 0;
        DR_TRY(dr_front_select(front.ptr, &index));
        double fQ = 0, fD = 0, nQ = 0, nD = 0;
        DR_TRY(dr_front_point(front.ptr, index, &fQ, &fD, &nQ, &nD));
        DR_TRY(dr_front_save_selected_csv(front.ptr, frontSelectArgs.out.c_str()));
        std::printf("selected point %d of %d: fQuality=%.6g fDiversity=%.6g -> %s\n", index,
                    dr_front_size(front.ptr), fQ, fD, frontSelectArgs.out.c_str());
        return 0;
    }

    if (analyzeCmd->get_subcommand("det-curve")->parsed()) {
        KernelHandle kernel;
        RankingHandle ranking;
        DR_TRY(dr_kernel_load(detCurveArgs.kernel.c_str(), 0, &kernel.ptr));
        DR_TRY(dr_ranking_load_csv(detCurveArgs.rank.c_str(), kernel.ptr, &ranking.ptr));
        const int maxK = detCurveArgs.maxK > 0 ? detCurveArgs.maxK : dr_kernel_size(kernel.ptr);
        DR_TRY(dr_analyze_det_curve(kernel.ptr, ranking.ptr, maxK, detCurveArgs.out.c_str(),
                                    detCurveArgs.svg.empty() ? nullptr
                                                             : detCurveArgs.svg.c_str()));
        std::printf("det-curve: k=1..%d -> %s\n", maxK, detCurveArgs.out.c_str());
        return 0;
    }

    if (analyzeCmd->get_subcommand("band")->parsed()) {
        KernelHandle kernel;
        DR_TRY(dr_kernel_load(bandArgs.kernel.c_str(), 0, &kernel.ptr));
        const int maxK = bandArgs.maxK > 0 ? bandArgs.maxK : dr_kernel_size(kernel.ptr);
        int collapse = 0;
        DR_TRY(dr_analyze_band(kernel.ptr, bandArgs.samples, bandArgs.percentiles.data(),
                               static_cast<int>(bandArgs.percentiles.size()), bandArgs.seed,
                               maxK, bandArgs.out.c_str(),
                               bandArgs.svg.empty() ? nullptr : bandArgs.svg.c_str(),
                               &collapse));
        if (collapse > 0)
            std::printf("band: k=1..%d, top band below 1e-6 from k=%d -> %s\n", maxK, collapse,
                        bandArgs.out.c_str());
        else
            std::printf("band: k=1..%d, top band never collapses -> %s\n", maxK,
                        bandArgs.out.c_str());
        return 0;
    }

    if (analyzeCmd->get_subcommand("persistence")->parsed()) {
        FrontHandle front;
        DR_TRY(dr_front_load_json(persistenceArgs.in.c_str(), &front.ptr));
        int unique = 0;
        double compression = 0.0;
        DR_TRY(dr_analyze_persistence(front.ptr, persistenceArgs.k,
                                      persistenceArgs.out.c_str(), &unique, &compression));
        std::printf("persistence: %d unique ids in top-%d across %d lists (%.1f%% of N) -> %s\n",
                    unique, persistenceArgs.k, dr_front_size(front.ptr), 100.0 * compression,
                    persistenceArgs.out.c_str());
        return 0;
    }

    if (analyzeCmd->get_subcommand("agreement")->parsed()) {
        DR_TRY(dr_analyze_agreement(
            agreementArgs.points.c_str(), agreementArgs.labels.c_str(),
            agreementArgs.sigma.c_str(), agreementArgs.kmeansKs.data(),
            static_cast<int>(agreementArgs.kmeansKs.size()), agreementArgs.sizeMin,
            agreementArgs.sizeMax, agreementArgs.trials, agreementArgs.seed,
            agreementArgs.out.c_str()));
        std::printf("agreement: sizes %d..%d, %d trials per size -> %s\n", agreementArgs.sizeMin,
                    agreementArgs.sizeMax, agreementArgs.trials, agreementArgs.out.c_str());
        return 0;
    }

    if (paperdemoCmd->parsed()) {
        const int failures = dr_bench_paperdemo();
        return failures == 0 ? 0 : 1;
    }

    return 0;
}
