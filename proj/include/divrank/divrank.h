/*
 * divrank C API.
 *
 * Every object lives behind an opaque handle created by a dr_*_read/run/
 * build function and released with the matching dr_*_free. Functions return
 * dr_status; on failure dr_last_error() holds a one-line message for the
 * calling thread. Pointers returned by accessor functions (ids, error text)
 * stay valid until the owning handle is freed or the next failing call on
 * the same thread.
 */

#ifndef DIVRANK_H
#define DIVRANK_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dr_status {
    DR_OK = 0,
    DR_ERROR_VALIDATION = 1, /* bad inputs or malformed content */
    DR_ERROR_NUMERIC = 2,    /* numerical failure, e.g. non-PSD under strict */
    DR_ERROR_IO = 3          /* unreadable or unwritable files */
} dr_status;

typedef struct dr_corpus dr_corpus;
typedef struct dr_kernel dr_kernel;
typedef struct dr_ranking dr_ranking;
typedef struct dr_front dr_front;

const char* dr_last_error(void);

/* ---- corpus ------------------------------------------------------------ */

/* format: "jsonl" or "csv"; NULL picks by file extension (.csv vs anything
 * else). */
dr_status dr_corpus_read(const char* path, const char* format, dr_corpus** out);

/* stopword_path NULL uses the built-in frozen list. */
dr_status dr_corpus_vectorize(dr_corpus* corpus, const char* stopword_path);

/* Binary corpus container, byte-deterministic. */
dr_status dr_corpus_save(const dr_corpus* corpus, const char* path);
dr_status dr_corpus_open(const char* path, dr_corpus** out);

int dr_corpus_size(const dr_corpus* corpus);
int dr_corpus_vectorized(const dr_corpus* corpus);
const char* dr_corpus_id(const dr_corpus* corpus, int index);
double dr_corpus_quality(const dr_corpus* corpus, int index);
void dr_corpus_free(dr_corpus* corpus);

/* ---- similarity kernels ------------------------------------------------ */

typedef struct dr_kernel_report {
    int symmetric;
    int unit_diagonal;
    int psd;
    double min_eigenvalue;
} dr_kernel_report;

dr_status dr_kernel_cosine(const dr_corpus* corpus, dr_kernel** out);

/* points CSV header "id,x1,..,xd"; sigma_spec is "median" or a positive
 * number. */
dr_status dr_kernel_rbf_from_points(const char* points_csv_path, const char* sigma_spec,
                                    dr_kernel** out);

/* Kernel CSV round trip is bit-exact. strict != 0 validates and fails with
 * DR_ERROR_NUMERIC on violations. */
dr_status dr_kernel_load(const char* path, int strict, dr_kernel** out);
dr_status dr_kernel_save(const dr_kernel* kernel, const char* path);
dr_status dr_kernel_validate(const dr_kernel* kernel, dr_kernel_report* report);

int dr_kernel_size(const dr_kernel* kernel);
const char* dr_kernel_id(const dr_kernel* kernel, int index);
double dr_kernel_entry(const dr_kernel* kernel, int i, int j);
void dr_kernel_free(dr_kernel* kernel);

/* ---- rankings ----------------------------------------------------------- */

/* corpus may be NULL; when present its qualities order the post-collapse
 * tail. */
dr_status dr_rank_greedy(const dr_kernel* kernel, const dr_corpus* corpus, dr_ranking** out);
dr_status dr_rank_quality(const dr_corpus* corpus, dr_ranking** out);
dr_status dr_rank_mmr(const dr_kernel* kernel, const dr_corpus* corpus, double lambda,
                      dr_ranking** out);

int dr_ranking_size(const dr_ranking* ranking);
/* Item index at a 0-based position, or -1 when out of range. */
int dr_ranking_item(const dr_ranking* ranking, int position);

/* CSV "rank,id,quality[,prefix_det]"; prefix_det appears when a kernel is
 * given. Ids come from the corpus when present, else from the kernel. */
dr_status dr_ranking_save_csv(const dr_ranking* ranking, const dr_corpus* corpus,
                              const dr_kernel* kernel, const char* path);
dr_status dr_ranking_load_csv(const char* path, const dr_kernel* kernel, dr_ranking** out);
void dr_ranking_free(dr_ranking* ranking);

/* ---- quality/diversity trade-off front ---------------------------------- */

typedef struct dr_front_config {
    int pop_size;
    int generations;
    double p_crossover;
    double p_mutation;
    unsigned long long seed;
    int horizon; /* <= 0: full list */
    int threads;
    int accumulate_archive;
} dr_front_config;

/* pop 500, 1000 generations, crossover 0.8, mutation 0.01, seed 42,
 * horizon 100, 1 thread. */
void dr_front_config_init(dr_front_config* config);

dr_status dr_front_run(const dr_kernel* kernel, const dr_corpus* corpus,
                       const dr_front_config* config, dr_front** out);
dr_status dr_front_save_json(const dr_front* front, const char* path);
dr_status dr_front_load_json(const char* path, dr_front** out);

int dr_front_size(const dr_front* front);
dr_status dr_front_point(const dr_front* front, int index, double* f_quality,
                         double* f_diversity, double* norm_q, double* norm_d);
dr_status dr_front_ranking(const dr_front* front, int index, dr_ranking** out);

/* Indifference-curve pick: minimal normalized distance to the utopia
 * origin. */
dr_status dr_front_select(const dr_front* front, int* index_out);
dr_status dr_front_save_selected_csv(const dr_front* front, const char* path);
dr_status dr_front_scatter_svg(const dr_front* front, const char* path);
void dr_front_free(dr_front* front);

/* ---- analyses ------------------------------------------------------------ */

/* CSV "k,det"; optional SVG plot. */
dr_status dr_analyze_det_curve(const dr_kernel* kernel, const dr_ranking* ranking, int max_k,
                               const char* out_csv, const char* out_svg);

/* CSV "k,p<P1>,p<P2>,..."; collapse_depth_out (nullable) receives the first
 * depth where the top band drops below 1e-6, 0 if never. */
dr_status dr_analyze_band(const dr_kernel* kernel, int n_samples, const double* percentiles,
                          int n_percentiles, unsigned long long seed, int max_k,
                          const char* out_csv, const char* out_svg, int* collapse_depth_out);

/* CSV "id,frequency" over the top-k prefixes of every front ranking. */
dr_status dr_analyze_persistence(const dr_front* front, int k, const char* out_csv,
                                 int* unique_out, double* compression_out);

/* Entropy-agreement experiment on a point set: methods are the DPP score,
 * cluster coverage with the gold labels, and cluster coverage with built-in
 * k-means labels for each entry of kmeans_ks. CSV "method,size,agreement". */
dr_status dr_analyze_agreement(const char* points_csv, const char* labels_csv,
                               const char* sigma_spec, const int* kmeans_ks, int n_ks,
                               int size_min, int size_max, int trials_per_size,
                               unsigned long long seed, const char* out_csv);

/* Built-in worked-example checks; prints one line per check to stdout and
 * returns the number of failures. */
int dr_bench_paperdemo(void);

#ifdef __cplusplus
}
#endif

#endif /* DIVRANK_H */
