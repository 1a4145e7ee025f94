#ifndef LEXSIM_H
#define LEXSIM_H

/* Generated by cbindgen from src/lib.rs. Do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LexsimStatus {
  LEXSIM_STATUS_OK = 0,
  LEXSIM_STATUS_NULL_POINTER = 1,
  LEXSIM_STATUS_INVALID_UTF8 = 2,
  LEXSIM_STATUS_CONFIG = 3,
  LEXSIM_STATUS_DATA = 4,
  LEXSIM_STATUS_BACKEND_UNAVAILABLE = 5,
  LEXSIM_STATUS_PANIC = 6,
} LexsimStatus;

// Opaque handle to a loaded corpus.
typedef struct LexsimCorpus LexsimCorpus;

typedef struct LexsimTTest {
  double t;
  double df;
  double p;
} LexsimTTest;

typedef struct LexsimInterval {
  double lo;
  double hi;
} LexsimInterval;

typedef struct LexsimAnova {
  double f;
  double df_between;
  double df_within;
  double p;
} LexsimAnova;

typedef struct LexsimLoss {
  double total;
  double mse;
  double kl;
} LexsimLoss;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *lexsim_version(void);

// Message of the last failed call on this thread; empty after a success.
// Valid until the next call into the library from the same thread.
const char *lexsim_last_error(void);

// Releases a string returned by this library. NULL is ignored.
void lexsim_string_free(char *s);

// Loads a corpus directory. `manifest_path` may be NULL to use
// `manifest.json` in the directory or, failing that, every corpus file.
enum LexsimStatus lexsim_corpus_load(const char *corpus_dir,
                                     const char *manifest_path,
                                     struct LexsimCorpus **out);

// Number of documents; 0 for NULL.
size_t lexsim_corpus_document_count(const struct LexsimCorpus *corpus);

// Canonical JSON of the corpus; free with `lexsim_string_free`.
enum LexsimStatus lexsim_corpus_to_json(const struct LexsimCorpus *corpus, char **out);

// Releases a corpus handle. NULL is ignored.
void lexsim_corpus_free(struct LexsimCorpus *corpus);

enum LexsimStatus lexsim_cosine(const double *u, const double *v, size_t dim, double *out);

// `1 − (2/π)·θ` for the angle θ between `u` and `v`.
enum LexsimStatus lexsim_angular_similarity(const double *u,
                                            const double *v,
                                            size_t dim,
                                            double *out);

enum LexsimStatus lexsim_welch_t_test(const double *a,
                                      size_t na,
                                      const double *b,
                                      size_t nb,
                                      struct LexsimTTest *out);

enum LexsimStatus lexsim_student_t_test(const double *a,
                                        size_t na,
                                        const double *b,
                                        size_t nb,
                                        struct LexsimTTest *out);

// Percentile bootstrap interval of the mean.
enum LexsimStatus lexsim_bootstrap_ci(const double *values,
                                      size_t n,
                                      size_t iterations,
                                      double level,
                                      uint64_t seed,
                                      struct LexsimInterval *out);

// One-way ANOVA. `values` holds the groups back to back; `group_sizes`
// gives the length of each of the `n_groups` groups.
enum LexsimStatus lexsim_one_way_anova(const double *values,
                                       const size_t *group_sizes,
                                       size_t n_groups,
                                       struct LexsimAnova *out);

// Distillation loss over `n` items of dimension `dim`. `teacher` and
// `student` are row-major `n × dim`; `lambdas` has `n` entries.
enum LexsimStatus lexsim_distillation_loss(const double *teacher,
                                           const double *student,
                                           const double *lambdas,
                                           size_t n,
                                           size_t dim,
                                           struct LexsimLoss *out);

// Mock embedding of `text` for `term`, written to `out[0..dim]`.
enum LexsimStatus lexsim_mock_embed(const char *text,
                                    const char *term,
                                    size_t dim,
                                    uint64_t seed,
                                    double *out);

// Runs the whole pipeline. `config_json` is an analysis config object
// (every field optional except `pairs`); the canonical report JSON is
// written to `*out_report`.
enum LexsimStatus lexsim_run_pipeline(const char *config_json, char **out_report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LEXSIM_H */
