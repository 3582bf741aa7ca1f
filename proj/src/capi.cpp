#include "divrank/divrank.h"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <string>

#include "divrank/analysis.hpp"
#include "divrank/benchdata.hpp"
#include "divrank/clustering.hpp"
#include "divrank/corpus.hpp"
#include "divrank/csv.hpp"
#include "divrank/errors.hpp"
#include "divrank/kernel.hpp"
#include "divrank/moo.hpp"
#include "divrank/paperdemo.hpp"
#include "divrank/quality.hpp"
#include "divrank/ranking.hpp"
#include "divrank/svg.hpp"
#include "divrank/text.hpp"

struct dr_corpus {
    divrank::Corpus value;
};
struct dr_kernel {
    divrank::SimilarityKernel value;
};
struct dr_ranking {
    divrank::Ranking value;
};
struct dr_front {
    divrank::TradeoffFront value;
};

namespace {

thread_local std::string tl_error;

dr_status statusOf(divrank::ErrorKind kind) {
    switch (kind) {
        case divrank::ErrorKind::validation: return DR_ERROR_VALIDATION;
        case divrank::ErrorKind::numeric: return DR_ERROR_NUMERIC;
        case divrank::ErrorKind::io: return DR_ERROR_IO;
    }
    return DR_ERROR_VALIDATION;
}

template <typename Fn>
dr_status guarded(Fn&& fn) noexcept {
    try {
        fn();
        tl_error.clear();
        return DR_OK;
    } catch (const divrank::EngineError& e) {
        tl_error = e.what();
        return statusOf(e.kind());
    } catch (const std::exception& e) {
        tl_error = std::string("internal error: ") + e.what();
        return DR_ERROR_VALIDATION;
    } catch (...) {
        tl_error = "internal error";
        return DR_ERROR_VALIDATION;
    }
}

void requireHandle(const void* handle, const char* what) {
    if (!handle) throw divrank::ValidationError(std::string("null ") + what + " handle");
}

void requireOut(const void* out) {
    if (!out) throw divrank::ValidationError("null output pointer");
}

// Kernel rows and corpus items must describe the same ground set in the same
// order.
void requireAligned(const divrank::SimilarityKernel& kernel, const divrank::Corpus& corpus) {
    if (kernel.size() != corpus.size())
        throw divrank::ValidationError(
            "kernel has " + std::to_string(kernel.size()) + " items, corpus has " +
            std::to_string(corpus.size()));
    if (kernel.sourceIds != corpus.ids())
        throw divrank::ValidationError("kernel ids do not match corpus ids (same order required)");
}

double parseSigma(const char* spec, const std::vector<Eigen::VectorXd>& points) {
    const std::string text = spec ? spec : "median";
    if (text == "median") {
        const double sigma = divrank::medianPairwiseDistance(points);
        if (!(sigma > 0))
            throw divrank::ValidationError(
                "median pairwise distance is zero; supply an explicit sigma");
        return sigma;
    }
    char* end = nullptr;
    const double sigma = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0')
        throw divrank::ValidationError("sigma must be \"median\" or a number, got \"" + text +
                                       "\"");
    return sigma;
}

} // namespace

extern "C" {

const char* dr_last_error(void) { return tl_error.c_str(); }

/* ---- corpus ------------------------------------------------------------ */

dr_status dr_corpus_read(const char* path, const char* format, dr_corpus** out) {
    return guarded([&] {
        requireOut(out);
        if (!path) throw divrank::ValidationError("null path");
        divrank::CorpusFormat fmt;
        if (format) {
            fmt = divrank::corpusFormatFromName(format);
        } else {
            const std::string p = path;
            fmt = p.size() >= 4 && p.substr(p.size() - 4) == ".csv" ? divrank::CorpusFormat::csv
                                                                    : divrank::CorpusFormat::jsonl;
        }
        *out = new dr_corpus{divrank::ingestCorpus(path, fmt)};
    });
}

dr_status dr_corpus_vectorize(dr_corpus* corpus, const char* stopword_path) {
    return guarded([&] {
        requireHandle(corpus, "corpus");
        if (stopword_path)
            divrank::vectorizeCorpus(corpus->value, divrank::loadStopwords(stopword_path));
        else
            divrank::vectorizeCorpus(corpus->value);
    });
}

dr_status dr_corpus_save(const dr_corpus* corpus, const char* path) {
    return guarded([&] {
        requireHandle(corpus, "corpus");
        divrank::saveCorpusBinary(corpus->value, path);
    });
}

dr_status dr_corpus_open(const char* path, dr_corpus** out) {
    return guarded([&] {
        requireOut(out);
        *out = new dr_corpus{divrank::loadCorpusBinary(path)};
    });
}

int dr_corpus_size(const dr_corpus* corpus) { return corpus ? corpus->value.size() : 0; }

int dr_corpus_vectorized(const dr_corpus* corpus) {
    return corpus && corpus->value.vectorized() ? 1 : 0;
}

const char* dr_corpus_id(const dr_corpus* corpus, int index) {
    if (!corpus || index < 0 || index >= corpus->value.size()) return nullptr;
    return corpus->value.items[static_cast<std::size_t>(index)].id.c_str();
}

double dr_corpus_quality(const dr_corpus* corpus, int index) {
    if (!corpus || index < 0 || index >= corpus->value.size()) return -1.0;
    return corpus->value.items[static_cast<std::size_t>(index)].quality;
}

void dr_corpus_free(dr_corpus* corpus) { delete corpus; }

/* ---- similarity kernels ------------------------------------------------ */

dr_status dr_kernel_cosine(const dr_corpus* corpus, dr_kernel** out) {
    return guarded([&] {
        requireHandle(corpus, "corpus");
        requireOut(out);
        *out = new dr_kernel{divrank::cosineKernel(corpus->value)};
    });
}

dr_status dr_kernel_rbf_from_points(const char* points_csv_path, const char* sigma_spec,
                                    dr_kernel** out) {
    return guarded([&] {
        requireOut(out);
        const divrank::PointSet points = divrank::loadPoints(points_csv_path);
        const double sigma = parseSigma(sigma_spec, points.coords);
        *out = new dr_kernel{divrank::rbfKernel(points.coords, sigma, points.ids)};
    });
}

dr_status dr_kernel_load(const char* path, int strict, dr_kernel** out) {
    return guarded([&] {
        requireOut(out);
        *out = new dr_kernel{divrank::loadKernel(path, strict != 0)};
    });
}

dr_status dr_kernel_save(const dr_kernel* kernel, const char* path) {
    return guarded([&] {
        requireHandle(kernel, "kernel");
        divrank::saveKernel(kernel->value, path);
    });
}

dr_status dr_kernel_validate(const dr_kernel* kernel, dr_kernel_report* report) {
    return guarded([&] {
        requireHandle(kernel, "kernel");
        requireOut(report);
        const divrank::KernelReport r = divrank::validateKernel(kernel->value);
        report->symmetric = r.symmetric ? 1 : 0;
        report->unit_diagonal = r.unitDiagonal ? 1 : 0;
        report->psd = r.psd ? 1 : 0;
        report->min_eigenvalue = r.minEigenvalue;
    });
}

int dr_kernel_size(const dr_kernel* kernel) { return kernel ? kernel->value.size() : 0; }

const char* dr_kernel_id(const dr_kernel* kernel, int index) {
    if (!kernel || index < 0 || index >= kernel->value.size()) return nullptr;
    return kernel->value.sourceIds[static_cast<std::size_t>(index)].c_str();
}

double dr_kernel_entry(const dr_kernel* kernel, int i, int j) {
    if (!kernel || i < 0 || j < 0 || i >= kernel->value.size() || j >= kernel->value.size())
        return 0.0;
    return kernel->value.entries(i, j);
}

void dr_kernel_free(dr_kernel* kernel) { delete kernel; }

/* ---- rankings ----------------------------------------------------------- */

dr_status dr_rank_greedy(const dr_kernel* kernel, const dr_corpus* corpus, dr_ranking** out) {
    return guarded([&] {
        requireHandle(kernel, "kernel");
        requireOut(out);
        if (corpus) {
            requireAligned(kernel->value, corpus->value);
            const divrank::RelevanceVector rel =
                divrank::normalizeRelevance(corpus->value.qualities());
            *out = new dr_ranking{divrank::greedyDiverseRanking(kernel->value, &rel)};
        } else {
            *out = new dr_ranking{divrank::greedyDiverseRanking(kernel->value)};
        }
    });
}

dr_status dr_rank_quality(const dr_corpus* corpus, dr_ranking** out) {
    return guarded([&] {
        requireHandle(corpus, "corpus");
        requireOut(out);
        *out = new dr_ranking{divrank::qualityRanking(corpus->value.qualities())};
    });
}

dr_status dr_rank_mmr(const dr_kernel* kernel, const dr_corpus* corpus, double lambda,
                      dr_ranking** out) {
    return guarded([&] {
        requireHandle(kernel, "kernel");
        requireHandle(corpus, "corpus");
        requireOut(out);
        requireAligned(kernel->value, corpus->value);
        const divrank::RelevanceVector rel =
            divrank::normalizeRelevance(corpus->value.qualities());
        *out = new dr_ranking{divrank::mmrRanking(kernel->value, rel, lambda)};
    });
}

int dr_ranking_size(const dr_ranking* ranking) {
    return ranking ? static_cast<int>(ranking->value.size()) : 0;
}

int dr_ranking_item(const dr_ranking* ranking, int position) {
    if (!ranking || position < 0 || position >= static_cast<int>(ranking->value.size()))
        return -1;
    return ranking->value[static_cast<std::size_t>(position)];
}

dr_status dr_ranking_save_csv(const dr_ranking* ranking, const dr_corpus* corpus,
                              const dr_kernel* kernel, const char* path) {
    return guarded([&] {
        requireHandle(ranking, "ranking");
        if (!corpus && !kernel)
            throw divrank::ValidationError("need a corpus or kernel to resolve item ids");
        if (corpus && kernel) requireAligned(kernel->value, corpus->value);
        const std::vector<std::string> ids =
            corpus ? corpus->value.ids() : kernel->value.sourceIds;
        std::vector<double> qualities;
        if (corpus) qualities = corpus->value.qualities();
        divrank::saveRankingCsv(ranking->value, ids, corpus ? &qualities : nullptr,
                                kernel ? &kernel->value : nullptr, path);
    });
}

dr_status dr_ranking_load_csv(const char* path, const dr_kernel* kernel, dr_ranking** out) {
    return guarded([&] {
        requireHandle(kernel, "kernel");
        requireOut(out);
        *out = new dr_ranking{divrank::loadRankingCsv(path, kernel->value.sourceIds)};
    });
}

void dr_ranking_free(dr_ranking* ranking) { delete ranking; }

/* ---- trade-off front ----------------------------------------------------- */

void dr_front_config_init(dr_front_config* config) {
    if (!config) return;
    config->pop_size = 500;
    config->generations = 1000;
    config->p_crossover = 0.8;
    config->p_mutation = 0.01;
    config->seed = 42;
    config->horizon = 100;
    config->threads = 1;
    config->accumulate_archive = 0;
}

dr_status dr_front_run(const dr_kernel* kernel, const dr_corpus* corpus,
                       const dr_front_config* config, dr_front** out) {
    return guarded([&] {
        requireHandle(kernel, "kernel");
        requireHandle(corpus, "corpus");
        requireHandle(config, "config");
        requireOut(out);
        requireAligned(kernel->value, corpus->value);
        divrank::EvolveConfig cfg;
        cfg.popSize = config->pop_size;
        cfg.generations = config->generations;
        cfg.pCrossover = config->p_crossover;
        cfg.pMutation = config->p_mutation;
        cfg.seed = config->seed;
        cfg.horizon = config->horizon;
        cfg.threads = config->threads;
        cfg.accumulateArchive = config->accumulate_archive != 0;
        const divrank::RelevanceVector rel =
            divrank::normalizeRelevance(corpus->value.qualities());
        divrank::TradeoffFront front = divrank::evolveFront(kernel->value, rel, cfg);
        front.metadata.qualities = corpus->value.qualities();
        *out = new dr_front{std::move(front)};
    });
}

dr_status dr_front_save_json(const dr_front* front, const char* path) {
    return guarded([&] {
        requireHandle(front, "front");
        divrank::saveFrontJson(front->value, path);
    });
}

dr_status dr_front_load_json(const char* path, dr_front** out) {
    return guarded([&] {
        requireOut(out);
        *out = new dr_front{divrank::loadFrontJson(path)};
    });
}

int dr_front_size(const dr_front* front) {
    return front ? static_cast<int>(front->value.points.size()) : 0;
}

dr_status dr_front_point(const dr_front* front, int index, double* f_quality,
                         double* f_diversity, double* norm_q, double* norm_d) {
    return guarded([&] {
        requireHandle(front, "front");
        if (index < 0 || index >= static_cast<int>(front->value.points.size()))
            throw divrank::ValidationError("front point index out of range");
        const auto& point = front->value.points[static_cast<std::size_t>(index)];
        if (f_quality) *f_quality = point.fQuality;
        if (f_diversity) *f_diversity = point.fDiversity;
        if (norm_q) *norm_q = point.normQ;
        if (norm_d) *norm_d = point.normD;
    });
}

dr_status dr_front_ranking(const dr_front* front, int index, dr_ranking** out) {
    return guarded([&] {
        requireHandle(front, "front");
        requireOut(out);
        if (index < 0 || index >= static_cast<int>(front->value.points.size()))
            throw divrank::ValidationError("front point index out of range");
        *out = new dr_ranking{front->value.points[static_cast<std::size_t>(index)].ranking};
    });
}

dr_status dr_front_select(const dr_front* front, int* index_out) {
    return guarded([&] {
        requireHandle(front, "front");
        requireOut(index_out);
        const divrank::FrontPoint& chosen = divrank::selectByIndifference(front->value);
        *index_out = static_cast<int>(&chosen - front->value.points.data());
    });
}

dr_status dr_front_save_selected_csv(const dr_front* front, const char* path) {
    return guarded([&] {
        requireHandle(front, "front");
        const divrank::FrontPoint& chosen = divrank::selectByIndifference(front->value);
        const auto& meta = front->value.metadata;
        const std::vector<double>* qualities =
            meta.qualities.size() == meta.ids.size() && !meta.qualities.empty()
                ? &meta.qualities
                : nullptr;
        divrank::saveRankingCsv(chosen.ranking, meta.ids, qualities, nullptr, path);
    });
}

dr_status dr_front_scatter_svg(const dr_front* front, const char* path) {
    return guarded([&] {
        requireHandle(front, "front");
        divrank::SvgSeries series;
        series.label = "trade-off front (normalized)";
        for (const auto& point : front->value.points) {
            series.x.push_back(point.normQ);
            series.y.push_back(point.normD);
        }
        divrank::writeScatterSvg(series, "quality objective", "diversity objective", path);
    });
}

void dr_front_free(dr_front* front) { delete front; }

/* ---- analyses ------------------------------------------------------------ */

dr_status dr_analyze_det_curve(const dr_kernel* kernel, const dr_ranking* ranking, int max_k,
                               const char* out_csv, const char* out_svg) {
    return guarded([&] {
        requireHandle(kernel, "kernel");
        requireHandle(ranking, "ranking");
        const auto curve = divrank::detCurve(ranking->value, kernel->value, max_k);
        std::ofstream out(out_csv, std::ios::binary | std::ios::trunc);
        if (!out) throw divrank::IoError(std::string("cannot write file: ") + out_csv);
        out << "k,det\n";
        char buffer[64];
        for (std::size_t k = 0; k < curve.size(); ++k) {
            std::snprintf(buffer, sizeof(buffer), "%.17g", curve[k]);
            out << (k + 1) << ',' << buffer << '\n';
        }
        if (!out) throw divrank::IoError(std::string("write failed: ") + out_csv);
        if (out_svg) {
            divrank::SvgSeries series;
            series.label = "det(L_S(k))";
            for (std::size_t k = 0; k < curve.size(); ++k) {
                series.x.push_back(static_cast<double>(k + 1));
                series.y.push_back(curve[k]);
            }
            divrank::writeLineChartSvg({series}, "k", "det", out_svg);
        }
    });
}

dr_status dr_analyze_band(const dr_kernel* kernel, int n_samples, const double* percentiles,
                          int n_percentiles, unsigned long long seed, int max_k,
                          const char* out_csv, const char* out_svg, int* collapse_depth_out) {
    return guarded([&] {
        requireHandle(kernel, "kernel");
        if (!percentiles || n_percentiles < 1)
            throw divrank::ValidationError("no percentiles requested");
        const divrank::PercentileBand band = divrank::percentileBand(
            kernel->value, n_samples,
            std::vector<double>(percentiles, percentiles + n_percentiles), seed, max_k);
        std::ofstream out(out_csv, std::ios::binary | std::ios::trunc);
        if (!out) throw divrank::IoError(std::string("cannot write file: ") + out_csv);
        out << "k";
        for (double p : band.percentiles) {
            char name[32];
            std::snprintf(name, sizeof(name), ",p%g", p);
            out << name;
        }
        out << '\n';
        char buffer[64];
        for (int k = 0; k < max_k; ++k) {
            out << (k + 1);
            for (std::size_t p = 0; p < band.curves.size(); ++p) {
                std::snprintf(buffer, sizeof(buffer), "%.17g",
                              band.curves[p][static_cast<std::size_t>(k)]);
                out << ',' << buffer;
            }
            out << '\n';
        }
        if (!out) throw divrank::IoError(std::string("write failed: ") + out_csv);
        if (out_svg) {
            std::vector<divrank::SvgSeries> series(band.curves.size());
            for (std::size_t p = 0; p < band.curves.size(); ++p) {
                char name[32];
                std::snprintf(name, sizeof(name), "p%g", band.percentiles[p]);
                series[p].label = name;
                for (int k = 0; k < max_k; ++k) {
                    series[p].x.push_back(static_cast<double>(k + 1));
                    series[p].y.push_back(band.curves[p][static_cast<std::size_t>(k)]);
                }
            }
            divrank::writeLineChartSvg(series, "k", "det", out_svg);
        }
        if (collapse_depth_out) *collapse_depth_out = band.collapseDepth;
    });
}

dr_status dr_analyze_persistence(const dr_front* front, int k, const char* out_csv,
                                 int* unique_out, double* compression_out) {
    return guarded([&] {
        requireHandle(front, "front");
        const divrank::PersistenceReport report = divrank::topKPersistence(front->value, k);
        const auto& ids = front->value.metadata.ids;
        // Sorted by descending frequency, then id, so the interesting rows
        // lead the file.
        std::vector<std::size_t> order(report.uniqueItems.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (report.frequency[a] != report.frequency[b])
                return report.frequency[a] > report.frequency[b];
            return report.uniqueItems[a] < report.uniqueItems[b];
        });
        std::ofstream out(out_csv, std::ios::binary | std::ios::trunc);
        if (!out) throw divrank::IoError(std::string("cannot write file: ") + out_csv);
        out << "id,frequency\n";
        char buffer[64];
        for (std::size_t i : order) {
            const int item = report.uniqueItems[i];
            std::snprintf(buffer, sizeof(buffer), "%.17g", report.frequency[i]);
            out << divrank::csv::escape(ids.at(static_cast<std::size_t>(item))) << ',' << buffer
                << '\n';
        }
        if (!out) throw divrank::IoError(std::string("write failed: ") + out_csv);
        if (unique_out) *unique_out = static_cast<int>(report.uniqueItems.size());
        if (compression_out) *compression_out = report.compressionRatio;
    });
}

dr_status dr_analyze_agreement(const char* points_csv, const char* labels_csv,
                               const char* sigma_spec, const int* kmeans_ks, int n_ks,
                               int size_min, int size_max, int trials_per_size,
                               unsigned long long seed, const char* out_csv) {
    return guarded([&] {
        const divrank::PointSet points = divrank::loadPoints(points_csv);
        const double sigma = parseSigma(sigma_spec, points.coords);
        const divrank::SimilarityKernel kernel =
            divrank::rbfKernel(points.coords, sigma, points.ids);
        const divrank::ClusterPartition gold = divrank::loadLabels(labels_csv, points.ids);

        std::vector<divrank::AgreementMethod> methods;
        methods.push_back({"dpp", true, {}});
        methods.push_back({"cluster-gold", false, gold});
        for (int i = 0; i < n_ks; ++i) {
            const int k = kmeans_ks[i];
            const divrank::KMeansResult km = divrank::kmeans(points.coords, k, seed);
            methods.push_back({"cluster-kmeans" + std::to_string(k), false, km.partition});
        }

        const divrank::AgreementResult result = divrank::agreementExperiment(
            kernel, gold, methods, size_min, size_max, trials_per_size, seed);

        std::ofstream out(out_csv, std::ios::binary | std::ios::trunc);
        if (!out) throw divrank::IoError(std::string("cannot write file: ") + out_csv);
        out << "method,size,agreement\n";
        char buffer[64];
        for (std::size_t m = 0; m < result.methods.size(); ++m) {
            for (std::size_t s = 0; s < result.sizes.size(); ++s) {
                std::snprintf(buffer, sizeof(buffer), "%.17g", result.agreement[m][s]);
                out << result.methods[m] << ',' << result.sizes[s] << ',' << buffer << '\n';
            }
        }
        if (!out) throw divrank::IoError(std::string("write failed: ") + out_csv);
    });
}

int dr_bench_paperdemo(void) {
    try {
        return divrank::printPaperDemo(std::cout);
    } catch (const std::exception& e) {
        tl_error = e.what();
        std::cout << "[FAIL] paperdemo aborted: " << e.what() << '\n';
        return 1;
    }
}

} // extern "C"
