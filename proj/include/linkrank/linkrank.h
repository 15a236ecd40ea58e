/*
 * Copyright 2026 The linkrank Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the linkrank library. Objects are opaque handles owned by
 * the caller and released with the matching *_free function. Every function
 * returning lr_status leaves a message for lr_last_error() on failure.
 *
 * Vertex ids are the external ids of the edge list. Output arrays follow one
 * convention: pass a buffer and its capacity; *len receives the full length
 * and LR_ERR_ARGUMENT is returned (nothing partial is promised) when the
 * capacity is too small. A NULL buffer with capacity 0 queries the length.
 */
#ifndef LINKRANK_LINKRANK_H_
#define LINKRANK_LINKRANK_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define LR_API __declspec(dllexport)
#else
#define LR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  LR_OK = 0,
  LR_ERR_PARSE = 1,
  LR_ERR_LOOKUP = 2,
  LR_ERR_ARGUMENT = 3,
  LR_ERR_TRAINING = 4,
  LR_ERR_METRIC = 5,
  LR_ERR_BALANCE = 6,
  LR_ERR_GENERATION = 7,
  LR_ERR_IO = 8,
  LR_ERR_INVARIANT = 9,
  LR_ERR_INTERNAL = 10
} lr_status;

typedef enum { LR_LABEL_FALSE = 0, LR_LABEL_REAL = 1 } lr_label;

typedef struct lr_graph lr_graph;
typedef struct lr_snapshot lr_snapshot;
typedef struct lr_window lr_window;
typedef struct lr_features lr_features;
typedef struct lr_ranking lr_ranking;
typedef struct lr_dataset lr_dataset;
typedef struct lr_model lr_model;
typedef struct lr_report lr_report;

LR_API const char* lr_version(void);
/* Message of the last failed call on this thread; "" if none. */
LR_API const char* lr_last_error(void);
LR_API const char* lr_status_name(lr_status status);
LR_API uint64_t lr_derive_seed(uint64_t master, const char* stream);
/* Shortest round-trip decimal text of x, NUL terminated. buf needs 32 bytes. */
LR_API void lr_format_double(double x, char* buf);

/* ---- graph ---- */

typedef struct {
  size_t vertices;
  size_t edges;
  size_t lines;
  size_t dropped_self_loops;
  size_t unique_pairs;
  int64_t t_min;
  int64_t t_max;
} lr_graph_info;

LR_API lr_status lr_graph_load(const char* path, lr_graph** out);
LR_API lr_status lr_graph_parse(const char* text, size_t length, lr_graph** out);
LR_API lr_status lr_graph_from_edges(const uint64_t* u, const uint64_t* v, const int64_t* t,
                                     size_t count, lr_graph** out);
LR_API void lr_graph_free(lr_graph* g);
LR_API lr_status lr_graph_info_get(const lr_graph* g, lr_graph_info* info);
LR_API lr_status lr_graph_write(const lr_graph* g, const char* path);
/* "value,count": links per vertex -> number of vertices. */
LR_API lr_status lr_graph_degree_histogram(const lr_graph* g, uint64_t* values,
                                           uint64_t* counts, size_t capacity, size_t* len);
LR_API lr_status lr_graph_write_degree_histogram(const lr_graph* g, const char* path);
/* "value,count": timestamp / divisor -> links. */
LR_API lr_status lr_graph_write_links_per_step(const lr_graph* g, int64_t divisor,
                                               const char* path);

/* ---- synthetic graphs ---- */

typedef struct {
  size_t n;
  size_t m_per_step;
  double t0_fraction;
  size_t window_edges;
  double triad_prob;
  double authority_bias;
  double locality_bias;
  double noise;
  uint64_t seed;
} lr_gen_config;

LR_API void lr_gen_config_default(lr_gen_config* cfg);
/* t0 and t_end may be NULL. */
LR_API lr_status lr_generate(const lr_gen_config* cfg, lr_graph** out, int64_t* t0,
                             int64_t* t_end);

/* ---- snapshot and window ---- */

typedef struct {
  size_t vertices;
  size_t edges;
  size_t max_degree;
  int64_t t0;
} lr_snapshot_info;

LR_API lr_status lr_snapshot_at(const lr_graph* g, int64_t t0, lr_snapshot** out);
LR_API void lr_snapshot_free(lr_snapshot* s);
LR_API lr_status lr_snapshot_info_get(const lr_snapshot* s, lr_snapshot_info* info);
/* Ids of every vertex known to the snapshot, ascending. */
LR_API lr_status lr_snapshot_vertices(const lr_snapshot* s, uint64_t* ids, size_t capacity,
                                      size_t* len);
LR_API lr_status lr_snapshot_neighbors(const lr_snapshot* s, uint64_t id, uint64_t* ids,
                                       size_t capacity, size_t* len);
LR_API lr_status lr_jaccard(const lr_snapshot* s, uint64_t a, uint64_t b, double* out);
LR_API lr_status lr_degree_coeff(const lr_snapshot* s, uint64_t id, double* out);
LR_API lr_status lr_transitivity(const lr_snapshot* s, uint64_t id, double* out);
/* Histogram of the Jaccard coefficient over snapshot edges ("lower,count"). */
LR_API lr_status lr_snapshot_write_jaccard_histogram(const lr_snapshot* s, int bins,
                                                     const char* transform, const char* path);

LR_API lr_status lr_window_create(const lr_graph* g, const lr_snapshot* s, int64_t t_end,
                                  lr_window** out);
LR_API void lr_window_free(lr_window* w);
LR_API size_t lr_window_size(const lr_window* w);
LR_API lr_status lr_window_edge(const lr_window* w, size_t i, uint64_t* a, uint64_t* b);

/* ---- global features ---- */

typedef struct {
  double tol;
  int max_iter;
  unsigned threads;
} lr_hits_options;

typedef struct {
  double authority;
  double hub;
  double degree_norm;
  double transitivity;
} lr_vertex_features;

LR_API void lr_hits_options_default(lr_hits_options* opts);
LR_API lr_status lr_features_compute(const lr_snapshot* s, const lr_hits_options* opts,
                                     lr_features** out);
LR_API void lr_features_free(lr_features* f);
LR_API lr_status lr_features_get(const lr_features* f, uint64_t id, lr_vertex_features* out);
LR_API lr_status lr_features_hits_info(const lr_features* f, int* iterations, double* residual);
/* "vertex,authority,degree_norm,transitivity". */
LR_API lr_status lr_features_write_csv(const lr_features* f, const char* path);
/* column: authority | hub | degree_norm | transitivity; transform: identity | log1p.
 * CSV "lower,count". */
LR_API lr_status lr_features_write_histogram(const lr_features* f, const char* column, int bins,
                                             const char* transform, const char* path);

/* ---- candidate ranking ---- */

typedef struct {
  double th;
  size_t k;
  /* authority | degree_norm | transitivity | weighted:a,d,t */
  const char* scoring;
  unsigned threads;
} lr_rank_config;

typedef struct {
  uint64_t candidate;
  double score;
  size_t via_seed_count;
} lr_candidate;

LR_API void lr_rank_config_default(lr_rank_config* cfg);
LR_API lr_status lr_retrieve_seeds(const lr_snapshot* s, uint64_t user, double th,
                                   uint64_t* ids, size_t capacity, size_t* len);
/* Users that cannot be resolved are recorded as failures, not errors.
 * Fails with LR_ERR_INVARIANT if f was not computed on s. */
LR_API lr_status lr_rank(const lr_snapshot* s, const lr_features* f, const uint64_t* users,
                         size_t count, const lr_rank_config* cfg, lr_ranking** out);
LR_API void lr_ranking_free(lr_ranking* r);
LR_API size_t lr_ranking_failed_count(const lr_ranking* r);
LR_API lr_status lr_ranking_get(const lr_ranking* r, uint64_t user, lr_candidate* out,
                                size_t capacity, size_t* len, size_t* seed_count,
                                size_t* candidate_count);
/* "user,rank,candidate,score,via_seed_count". */
LR_API lr_status lr_ranking_write_csv(const lr_ranking* r, const char* path);

/* ---- labeled datasets ---- */

typedef enum { LR_DATASET_CLASSIFICATION = 0, LR_DATASET_THRESHOLD = 1 } lr_dataset_variant;

#define LR_FEATURE_COUNT 6

typedef struct {
  lr_dataset_variant variant;
  double th;           /* threshold variant only */
  size_t neg_cap;      /* classification variant only: negatives per user */
  uint64_t seed;       /* negative sampling stream */
  unsigned threads;
  const uint64_t* roster; /* optional extra ids counted as existing at t0 */
  size_t roster_len;
} lr_dataset_config;

typedef struct {
  size_t active_users;
  size_t seed_count;
  size_t candidate_count;
  size_t real_count;
  size_t false_count;
  size_t eligible_window_pairs;
  double recall;
} lr_build_stats;

typedef struct {
  uint64_t u;
  uint64_t v;
  /* authority1, authority2, degree1, degree2, transitivity1, transitivity2 */
  double features[LR_FEATURE_COUNT];
  lr_label label;
} lr_instance;

LR_API void lr_dataset_config_default(lr_dataset_config* cfg);
/* Name of feature column i, or NULL when out of range. */
LR_API const char* lr_feature_name(size_t i);
/* stats may be NULL. Fails with LR_ERR_INVARIANT if f was not computed on s. */
LR_API lr_status lr_dataset_build(const lr_snapshot* s, const lr_window* w, const lr_features* f,
                                  const lr_dataset_config* cfg, lr_dataset** out,
                                  lr_build_stats* stats);
LR_API lr_status lr_dataset_from_rows(const lr_instance* rows, size_t count, lr_dataset** out);
LR_API lr_status lr_dataset_load(const char* path, lr_dataset** out);
LR_API lr_status lr_dataset_write(const lr_dataset* d, const char* path);
LR_API void lr_dataset_free(lr_dataset* d);
LR_API size_t lr_dataset_size(const lr_dataset* d);
LR_API size_t lr_dataset_count(const lr_dataset* d, lr_label label);
LR_API lr_status lr_dataset_row(const lr_dataset* d, size_t i, lr_instance* out);
LR_API lr_status lr_dataset_balance(const lr_dataset* d, uint64_t seed, lr_dataset** out);

/* ---- learners ---- */

typedef enum { LR_MODEL_NB = 0, LR_MODEL_LOGISTIC = 1, LR_MODEL_TREE = 2 } lr_model_variant;

typedef struct {
  lr_model_variant variant;
  size_t min_leaf;
  int max_depth; /* <= 0: unlimited */
  double pruning_confidence;
  int prune;
  double learning_rate;
  int epochs;
  double l2;
  double variance_floor;
  uint64_t seed;
} lr_train_config;

typedef struct {
  lr_model_variant variant;
  size_t dim;
  size_t tree_nodes;
  int tree_depth;
  int rate_halvings;
} lr_model_info;

typedef struct {
  size_t feature;
  double gain;
} lr_feature_gain;

LR_API void lr_train_config_default(lr_train_config* cfg);
/* nb | bayes | logistic | log | tree | j48 */
LR_API lr_status lr_parse_model_variant(const char* name, lr_model_variant* out);
LR_API const char* lr_model_variant_name(lr_model_variant v);
LR_API lr_status lr_train(const lr_dataset* d, const lr_train_config* cfg, lr_model** out);
LR_API void lr_model_free(lr_model* m);
LR_API lr_status lr_model_info_get(const lr_model* m, lr_model_info* info);
LR_API lr_status lr_model_predict(const lr_model* m, const double* x, size_t dim,
                                  lr_label* label, double* score);
LR_API lr_status lr_model_save(const lr_model* m, const char* path);
LR_API lr_status lr_model_load(const char* path, lr_model** out);
LR_API lr_status lr_info_gain(const lr_dataset* d, size_t feature, int bins, double* out);
/* All six features, highest gain first. out must hold LR_FEATURE_COUNT. */
LR_API lr_status lr_rank_features(const lr_dataset* d, int bins, lr_feature_gain* out);

/* ---- metrics ---- */

typedef struct {
  double tp_rate;
  double fp_rate;
  double precision;
  double recall;
  double f_measure;
  double mcc;
  double roc_area;
  double prc_area;
} lr_class_metrics;

typedef enum { LR_ROW_REAL = 0, LR_ROW_FALSE = 1, LR_ROW_WEIGHTED = 2 } lr_report_row;

LR_API lr_status lr_class_metrics_from_counts(size_t tp, size_t fp, size_t tn, size_t fn,
                                              lr_class_metrics* out);
LR_API lr_status lr_roc_area(const double* scores, const lr_label* labels, size_t count,
                             lr_label positive, double* out);
LR_API lr_status lr_prc_area(const double* scores, const lr_label* labels, size_t count,
                             lr_label positive, double* out);
/* scores are probabilities of class real; decision threshold 0.5. */
LR_API lr_status lr_report_from_scores(const double* scores, const lr_label* labels,
                                       size_t count, lr_report** out);
/* Stratified k-fold cross-validation with pooled held-out predictions. */
LR_API lr_status lr_cross_validate(const lr_dataset* d, const lr_train_config* cfg, int folds,
                                   uint64_t seed, unsigned threads, lr_report** out);
/* Scores every dataset row with a trained model. */
LR_API lr_status lr_model_evaluate(const lr_model* m, const lr_dataset* d, lr_report** out);
LR_API void lr_report_free(lr_report* r);
LR_API lr_status lr_report_get(const lr_report* r, lr_report_row row, lr_class_metrics* out);
/* "class,tp_rate,...,prc_area" plus the real, false and weighted rows. */
LR_API lr_status lr_report_write_csv(const lr_report* r, const char* path);
/* The three rows as text, each starting with prefix and a comma (no header).
 * *len is the text length; capacity must exceed it to fit the NUL. */
LR_API lr_status lr_report_rows(const lr_report* r, const char* prefix, char* buf,
                                size_t capacity, size_t* len);

#ifdef __cplusplus
}
#endif

#endif  /* LINKRANK_LINKRANK_H_ */
