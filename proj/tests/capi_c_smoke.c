/* Compiled as C11: proves divrank.h is a plain C header and the shared
 * library is callable without any C++ toolchain on the consumer side. */

#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "divrank/divrank.h"

static int failures = 0;

static void expect(int condition, const char* what) {
    if (!condition) {
        fprintf(stderr, "FAIL: %s (%s)\n", what, dr_last_error());
        ++failures;
    }
}

int main(int argc, char** argv) {
    if (argc < 2) {
        fprintf(stderr, "usage: %s <scratch-dir>\n", argv[0]);
        return 2;
    }
    char path[4096];
    snprintf(path, sizeof(path), "%s/ideas.jsonl", argv[1]);
    FILE* f = fopen(path, "wb");
    if (!f) {
        fprintf(stderr, "cannot write %s\n", path);
        return 2;
    }
    fputs("{\"id\":\"a\",\"text\":\"solar roof panels city\",\"quality\":5}\n"
          "{\"id\":\"b\",\"text\":\"wind turbine coast farm\",\"quality\":3}\n"
          "{\"id\":\"c\",\"text\":\"solar farm city panels\",\"quality\":8}\n"
          "{\"id\":\"d\",\"text\":\"river park trail bikes\",\"quality\":1}\n",
          f);
    fclose(f);

    dr_corpus* corpus = NULL;
    expect(dr_corpus_read(path, NULL, &corpus) == DR_OK, "corpus read");
    expect(dr_corpus_vectorize(corpus, NULL) == DR_OK, "vectorize");
    expect(dr_corpus_size(corpus) == 4, "corpus size");

    dr_kernel* kernel = NULL;
    expect(dr_kernel_cosine(corpus, &kernel) == DR_OK, "cosine kernel");

    dr_kernel_report report;
    expect(dr_kernel_validate(kernel, &report) == DR_OK, "validate");
    expect(report.psd == 1, "kernel psd");

    dr_ranking* greedy = NULL;
    expect(dr_rank_greedy(kernel, corpus, &greedy) == DR_OK, "greedy rank");
    expect(dr_ranking_size(greedy) == 4, "ranking size");

    dr_front_config config;
    dr_front_config_init(&config);
    config.pop_size = 12;
    config.generations = 10;
    config.horizon = 0;

    dr_front* front = NULL;
    expect(dr_front_run(kernel, corpus, &config, &front) == DR_OK, "front run");
    expect(dr_front_size(front) >= 1, "front non-empty");

    double fq = -1.0;
    expect(dr_front_point(front, 0, &fq, NULL, NULL, NULL) == DR_OK, "front point");
    expect(fq == 0.0, "quality extreme present");

    int chosen = -1;
    expect(dr_front_select(front, &chosen) == DR_OK, "front select");
    expect(chosen >= 0 && chosen < dr_front_size(front), "selected index in range");

    /* error paths surface proper codes and a message */
    dr_corpus* missing = NULL;
    expect(dr_corpus_read("/no/such/file.jsonl", NULL, &missing) == DR_ERROR_IO,
           "missing file is an IO error");
    expect(strlen(dr_last_error()) > 0, "error message set");

    dr_front_free(front);
    dr_ranking_free(greedy);
    dr_kernel_free(kernel);
    dr_corpus_free(corpus);

    if (failures == 0) puts("c-smoke: ok");
    return failures == 0 ? 0 : 1;
}
