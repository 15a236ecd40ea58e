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

#include "linkrank/linkrank.h"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <memory>
#include <new>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "linkrank/common.hpp"
#include "linkrank/dataset.hpp"
#include "linkrank/error.hpp"
#include "linkrank/features.hpp"
#include "linkrank/format.hpp"
#include "linkrank/graph.hpp"
#include "linkrank/learners.hpp"
#include "linkrank/metrics.hpp"
#include "linkrank/ranker.hpp"
#include "linkrank/synthgen.hpp"

using namespace linkrank;

struct lr_graph {
  TemporalGraph graph;
};

struct lr_snapshot {
  std::shared_ptr<const Snapshot> snap;
};

struct lr_window {
  ObservationWindow window;
  std::shared_ptr<const VertexIndex> index;
};

struct lr_features {
  FeatureTable table;
  std::shared_ptr<const Snapshot> snap;
};

struct lr_ranking {
  BatchRanking ranking;
  std::shared_ptr<const Snapshot> snap;
};

struct lr_dataset {
  Dataset dataset;
};

struct lr_model {
  Model model;
};

struct lr_report {
  MetricsReport report;
};

namespace {

thread_local std::string last_error;

template <typename Fn>
lr_status guarded(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return LR_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return static_cast<lr_status>(static_cast<int>(e.kind()));
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return LR_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return LR_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return LR_ERR_INTERNAL;
  }
}

template <typename T>
const T& need(const T* p, const char* what) {
  if (p == nullptr) throw ArgumentError(std::string(what) + " is null");
  return *p;
}

template <typename T>
void need_out(T** out) {
  if (out == nullptr) throw ArgumentError("output pointer is null");
  *out = nullptr;
}

std::string need_str(const char* s, const char* what) {
  if (s == nullptr) throw ArgumentError(std::string(what) + " is null");
  return s;
}

std::ofstream open_out(const char* path) {
  std::ofstream out(need_str(path, "path"), std::ios::binary);
  if (!out) throw IoError(std::string("cannot open ") + path + " for writing");
  return out;
}

void finish(std::ofstream& out, const char* path) {
  out.flush();
  if (!out) throw IoError(std::string("write failed: ") + path);
}

template <typename Writer>
void write_file(const char* path, Writer&& writer) {
  auto out = open_out(path);
  writer(out);
  finish(out, path);
}

// Copies `items` through `convert` into a caller buffer.
template <typename In, typename Out, typename Convert>
void copy_out(const std::vector<In>& items, Out* buf, std::size_t capacity, std::size_t* len,
              Convert&& convert) {
  if (len == nullptr) throw ArgumentError("len is null");
  *len = items.size();
  if (buf == nullptr && capacity == 0) return;
  if (buf == nullptr || capacity < items.size()) {
    throw ArgumentError("buffer holds " + std::to_string(capacity) + " entries, " +
                        std::to_string(items.size()) + " needed");
  }
  for (std::size_t i = 0; i < items.size(); ++i) buf[i] = convert(items[i]);
}

void write_histogram(const std::vector<HistogramBin>& bins, std::ostream& out) {
  out << "lower,count\n";
  for (const auto& b : bins) out << format_double(b.lower) << ',' << b.count << '\n';
}

lr_class_metrics to_c(const ClassMetrics& m) {
  return {m.tp_rate, m.fp_rate, m.precision, m.recall,
          m.f_measure, m.mcc, m.roc_area, m.prc_area};
}

std::vector<Label> to_labels(const lr_label* labels, std::size_t count) {
  if (count > 0 && labels == nullptr) throw ArgumentError("labels is null");
  std::vector<Label> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (labels[i] != LR_LABEL_FALSE && labels[i] != LR_LABEL_REAL) {
      throw ArgumentError("invalid label at index " + std::to_string(i));
    }
    out[i] = static_cast<Label>(labels[i]);
  }
  return out;
}

std::span<const double> to_span(const double* p, std::size_t count, const char* what) {
  if (count > 0 && p == nullptr) throw ArgumentError(std::string(what) + " is null");
  return {p, count};
}

ModelVariant to_variant(lr_model_variant v) {
  switch (v) {
    case LR_MODEL_NB: return ModelVariant::kGaussianNb;
    case LR_MODEL_LOGISTIC: return ModelVariant::kLogistic;
    case LR_MODEL_TREE: return ModelVariant::kTree;
  }
  throw ArgumentError("unknown model variant");
}

lr_model_variant from_variant(ModelVariant v) {
  switch (v) {
    case ModelVariant::kGaussianNb: return LR_MODEL_NB;
    case ModelVariant::kLogistic: return LR_MODEL_LOGISTIC;
    case ModelVariant::kTree: return LR_MODEL_TREE;
  }
  return LR_MODEL_NB;
}

TrainConfig to_train_config(const lr_train_config& c) {
  TrainConfig cfg;
  cfg.tree.min_leaf = c.min_leaf;
  if (c.max_depth > 0) cfg.tree.max_depth = c.max_depth;
  cfg.tree.pruning_confidence = c.pruning_confidence;
  cfg.tree.prune = c.prune != 0;
  cfg.logistic.learning_rate = c.learning_rate;
  cfg.logistic.epochs = c.epochs;
  cfg.logistic.l2 = c.l2;
  cfg.nb.variance_floor = c.variance_floor;
  cfg.seed = c.seed;
  cfg.validate();
  return cfg;
}

}  // namespace

extern "C" {

const char* lr_version(void) { return "0.1.0"; }

const char* lr_last_error(void) { return last_error.c_str(); }

const char* lr_status_name(lr_status status) {
  switch (status) {
    case LR_OK: return "ok";
    case LR_ERR_PARSE: return "parse error";
    case LR_ERR_LOOKUP: return "lookup error";
    case LR_ERR_ARGUMENT: return "argument error";
    case LR_ERR_TRAINING: return "training error";
    case LR_ERR_METRIC: return "metric error";
    case LR_ERR_BALANCE: return "balance error";
    case LR_ERR_GENERATION: return "generation error";
    case LR_ERR_IO: return "io error";
    case LR_ERR_INVARIANT: return "invariant violation";
    case LR_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

uint64_t lr_derive_seed(uint64_t master, const char* stream) {
  return derive_seed(master, stream == nullptr ? "" : stream);
}

void lr_format_double(double x, char* buf) {
  if (buf == nullptr) return;
  const auto text = format_double(x);
  const auto n = std::min<std::size_t>(text.size(), 31);
  std::memcpy(buf, text.data(), n);
  buf[n] = '\0';
}

/* ---- graph ---- */

lr_status lr_graph_load(const char* path, lr_graph** out) {
  return guarded([&] {
    need_out(out);
    *out = new lr_graph{load_edge_list_file(need_str(path, "path"))};
  });
}

lr_status lr_graph_parse(const char* text, size_t length, lr_graph** out) {
  return guarded([&] {
    need_out(out);
    if (text == nullptr && length > 0) throw ArgumentError("text is null");
    std::istringstream in(std::string(text == nullptr ? "" : text, length));
    *out = new lr_graph{load_edge_list(in)};
  });
}

lr_status lr_graph_from_edges(const uint64_t* u, const uint64_t* v, const int64_t* t,
                              size_t count, lr_graph** out) {
  return guarded([&] {
    need_out(out);
    if (count > 0 && (u == nullptr || v == nullptr || t == nullptr)) {
      throw ArgumentError("edge arrays are null");
    }
    std::vector<std::pair<std::pair<VertexId, VertexId>, Timestamp>> triples(count);
    for (size_t i = 0; i < count; ++i) triples[i] = {{u[i], v[i]}, t[i]};
    *out = new lr_graph{TemporalGraph::from_triples(triples)};
  });
}

void lr_graph_free(lr_graph* g) { delete g; }

lr_status lr_graph_info_get(const lr_graph* g, lr_graph_info* info) {
  return guarded([&] {
    const auto& graph = need(g, "graph").graph;
    if (info == nullptr) throw ArgumentError("info is null");
    *info = {};
    info->vertices = graph.vertex_count();
    info->edges = graph.edges().size();
    info->lines = graph.stats().lines;
    info->dropped_self_loops = graph.stats().dropped_self_loops;
    info->unique_pairs = graph.unique_pair_count();
    if (!graph.edges().empty()) {
      const auto [lo, hi] = std::minmax_element(
          graph.edges().begin(), graph.edges().end(),
          [](const TemporalEdge& a, const TemporalEdge& b) { return a.t < b.t; });
      info->t_min = lo->t;
      info->t_max = hi->t;
    }
  });
}

lr_status lr_graph_write(const lr_graph* g, const char* path) {
  return guarded([&] {
    const auto& graph = need(g, "graph").graph;
    write_file(path, [&](std::ostream& out) { write_edge_list(graph, out); });
  });
}

lr_status lr_graph_degree_histogram(const lr_graph* g, uint64_t* values, uint64_t* counts,
                                    size_t capacity, size_t* len) {
  return guarded([&] {
    const auto rows = degree_histogram(need(g, "graph").graph);
    copy_out(rows, values, capacity, len, [](const auto& r) { return r.first; });
    if (values != nullptr) {
      if (counts == nullptr) throw ArgumentError("counts is null");
      for (size_t i = 0; i < rows.size(); ++i) counts[i] = rows[i].second;
    }
  });
}

lr_status lr_graph_write_degree_histogram(const lr_graph* g, const char* path) {
  return guarded([&] {
    const auto rows = degree_histogram(need(g, "graph").graph);
    write_file(path, [&](std::ostream& out) { write_value_count_csv(rows, out); });
  });
}

lr_status lr_graph_write_links_per_step(const lr_graph* g, int64_t divisor, const char* path) {
  return guarded([&] {
    const auto rows = links_per_step(need(g, "graph").graph, divisor);
    write_file(path, [&](std::ostream& out) { write_value_count_csv(rows, out); });
  });
}

/* ---- synthetic graphs ---- */

void lr_gen_config_default(lr_gen_config* cfg) {
  if (cfg == nullptr) return;
  const GenConfig d;
  *cfg = {d.n,
          d.m_per_step,
          d.t0_fraction,
          d.window_edges,
          d.triad_prob,
          d.signal.authority_bias,
          d.signal.locality_bias,
          d.signal.noise,
          d.seed};
}

lr_status lr_generate(const lr_gen_config* cfg, lr_graph** out, int64_t* t0, int64_t* t_end) {
  return guarded([&] {
    const auto& c = need(cfg, "config");
    need_out(out);
    GenConfig gc;
    gc.n = c.n;
    gc.m_per_step = c.m_per_step;
    gc.t0_fraction = c.t0_fraction;
    gc.window_edges = c.window_edges;
    gc.triad_prob = c.triad_prob;
    gc.signal = {c.authority_bias, c.locality_bias, c.noise};
    gc.seed = c.seed;
    auto generated = generate(gc);
    if (t0 != nullptr) *t0 = generated.t0;
    if (t_end != nullptr) *t_end = generated.t_end;
    *out = new lr_graph{std::move(generated.graph)};
  });
}

/* ---- snapshot and window ---- */

lr_status lr_snapshot_at(const lr_graph* g, int64_t t0, lr_snapshot** out) {
  return guarded([&] {
    const auto& graph = need(g, "graph").graph;
    need_out(out);
    *out = new lr_snapshot{std::make_shared<const Snapshot>(snapshot_at(graph, t0))};
  });
}

void lr_snapshot_free(lr_snapshot* s) { delete s; }

lr_status lr_snapshot_info_get(const lr_snapshot* s, lr_snapshot_info* info) {
  return guarded([&] {
    const auto& snap = *need(s, "snapshot").snap;
    if (info == nullptr) throw ArgumentError("info is null");
    *info = {snap.vertex_count(), snap.edge_count(), snap.max_degree(), snap.t0()};
  });
}

lr_status lr_snapshot_vertices(const lr_snapshot* s, uint64_t* ids, size_t capacity,
                               size_t* len) {
  return guarded([&] {
    const auto& snap = *need(s, "snapshot").snap;
    copy_out(snap.index().ids(), ids, capacity, len, [](VertexId id) { return id; });
  });
}

lr_status lr_snapshot_neighbors(const lr_snapshot* s, uint64_t id, uint64_t* ids,
                                size_t capacity, size_t* len) {
  return guarded([&] {
    const auto& snap = *need(s, "snapshot").snap;
    const auto nbrs = snap.neighbors(snap.vertex(id));
    const std::vector<Vertex> items(nbrs.begin(), nbrs.end());
    copy_out(items, ids, capacity, len, [&](Vertex v) { return snap.id(v); });
  });
}

lr_status lr_jaccard(const lr_snapshot* s, uint64_t a, uint64_t b, double* out) {
  return guarded([&] {
    const auto& snap = *need(s, "snapshot").snap;
    if (out == nullptr) throw ArgumentError("out is null");
    *out = jaccard(snap, snap.vertex(a), snap.vertex(b));
  });
}

lr_status lr_degree_coeff(const lr_snapshot* s, uint64_t id, double* out) {
  return guarded([&] {
    const auto& snap = *need(s, "snapshot").snap;
    if (out == nullptr) throw ArgumentError("out is null");
    *out = degree_coeff(snap, snap.vertex(id));
  });
}

lr_status lr_transitivity(const lr_snapshot* s, uint64_t id, double* out) {
  return guarded([&] {
    const auto& snap = *need(s, "snapshot").snap;
    if (out == nullptr) throw ArgumentError("out is null");
    *out = transitivity_coeff(snap, snap.vertex(id));
  });
}

lr_status lr_snapshot_write_jaccard_histogram(const lr_snapshot* s, int bins,
                                              const char* transform, const char* path) {
  return guarded([&] {
    const auto& snap = *need(s, "snapshot").snap;
    const auto tf = parse_histogram_transform(need_str(transform, "transform"));
    const auto values = edge_jaccard(snap);
    const auto h = histogram(values, bins, tf);
    write_file(path, [&](std::ostream& out) { write_histogram(h, out); });
  });
}

lr_status lr_window_create(const lr_graph* g, const lr_snapshot* s, int64_t t_end,
                           lr_window** out) {
  return guarded([&] {
    const auto& graph = need(g, "graph").graph;
    const auto& snap = *need(s, "snapshot").snap;
    need_out(out);
    if (snap.shared_index() != graph.shared_index()) {
      throw ArgumentError("snapshot was not taken from this graph");
    }
    *out = new lr_window{window_edges(graph, snap, snap.t0(), t_end), snap.shared_index()};
  });
}

void lr_window_free(lr_window* w) { delete w; }

size_t lr_window_size(const lr_window* w) {
  return w == nullptr ? 0 : w->window.new_edges.size();
}

lr_status lr_window_edge(const lr_window* w, size_t i, uint64_t* a, uint64_t* b) {
  return guarded([&] {
    const auto& win = need(w, "window");
    if (i >= win.window.new_edges.size()) throw ArgumentError("window edge index out of range");
    if (a == nullptr || b == nullptr) throw ArgumentError("output is null");
    *a = win.index->id(win.window.new_edges[i].first);
    *b = win.index->id(win.window.new_edges[i].second);
  });
}

/* ---- global features ---- */

void lr_hits_options_default(lr_hits_options* opts) {
  if (opts == nullptr) return;
  const HitsOptions d;
  *opts = {d.tol, d.max_iter, 1};
}

lr_status lr_features_compute(const lr_snapshot* s, const lr_hits_options* opts,
                              lr_features** out) {
  return guarded([&] {
    const auto& handle = need(s, "snapshot");
    need_out(out);
    lr_hits_options o;
    lr_hits_options_default(&o);
    if (opts != nullptr) o = *opts;
    auto table = compute_global_features(*handle.snap, {o.tol, o.max_iter},
                                         std::max(1u, o.threads));
    *out = new lr_features{std::move(table), handle.snap};
  });
}

void lr_features_free(lr_features* f) { delete f; }

lr_status lr_features_get(const lr_features* f, uint64_t id, lr_vertex_features* out) {
  return guarded([&] {
    const auto& feats = need(f, "features");
    if (out == nullptr) throw ArgumentError("out is null");
    const auto& row = feats.table[feats.snap->vertex(id)];
    *out = {row.authority, row.hub, row.degree_norm, row.transitivity};
  });
}

lr_status lr_features_hits_info(const lr_features* f, int* iterations, double* residual) {
  return guarded([&] {
    const auto& feats = need(f, "features");
    if (iterations != nullptr) *iterations = feats.table.hits_iterations;
    if (residual != nullptr) *residual = feats.table.hits_residual;
  });
}

lr_status lr_features_write_csv(const lr_features* f, const char* path) {
  return guarded([&] {
    const auto& feats = need(f, "features");
    write_file(path, [&](std::ostream& out) { write_feature_csv(feats.table, *feats.snap, out); });
  });
}

lr_status lr_features_write_histogram(const lr_features* f, const char* column, int bins,
                                      const char* transform, const char* path) {
  return guarded([&] {
    const auto& feats = need(f, "features");
    const auto col = parse_feature_column(need_str(column, "column"));
    const auto tf = parse_histogram_transform(need_str(transform, "transform"));
    const auto h = feature_histogram(feats.table, col, bins, tf);
    write_file(path, [&](std::ostream& out) { write_histogram(h, out); });
  });
}

/* ---- candidate ranking ---- */

void lr_rank_config_default(lr_rank_config* cfg) {
  if (cfg == nullptr) return;
  const RankerConfig d;
  *cfg = {d.th, d.k, "authority", 1};
}

lr_status lr_retrieve_seeds(const lr_snapshot* s, uint64_t user, double th, uint64_t* ids,
                            size_t capacity, size_t* len) {
  return guarded([&] {
    const auto& snap = *need(s, "snapshot").snap;
    RankerConfig cfg;
    cfg.th = th;
    cfg.validate();
    const auto seeds = retrieve_seeds(snap, snap.vertex(user), th);
    copy_out(seeds, ids, capacity, len, [&](Vertex v) { return snap.id(v); });
  });
}

lr_status lr_rank(const lr_snapshot* s, const lr_features* f, const uint64_t* users,
                  size_t count, const lr_rank_config* cfg, lr_ranking** out) {
  return guarded([&] {
    const auto& handle = need(s, "snapshot");
    const auto& feats = need(f, "features");
    need_out(out);
    if (feats.snap != handle.snap) {
      throw InvariantError("features were computed on another snapshot");
    }
    if (count > 0 && users == nullptr) throw ArgumentError("users is null");
    lr_rank_config c;
    lr_rank_config_default(&c);
    if (cfg != nullptr) c = *cfg;
    RankerConfig rc;
    rc.th = c.th;
    rc.k = c.k;
    if (c.scoring != nullptr) rc.scoring = parse_scoring(c.scoring);
    auto ranking = predict_links(*handle.snap, feats.table, {users, count}, rc,
                                 std::max(1u, c.threads));
    *out = new lr_ranking{std::move(ranking), handle.snap};
  });
}

void lr_ranking_free(lr_ranking* r) { delete r; }

size_t lr_ranking_failed_count(const lr_ranking* r) {
  return r == nullptr ? 0 : r->ranking.failed.size();
}

lr_status lr_ranking_get(const lr_ranking* r, uint64_t user, lr_candidate* out, size_t capacity,
                         size_t* len, size_t* seed_count, size_t* candidate_count) {
  return guarded([&] {
    const auto& handle = need(r, "ranking");
    const auto it = handle.ranking.users.find(user);
    if (it == handle.ranking.users.end()) {
      throw LookupError("user " + std::to_string(user) + " is not in the ranking");
    }
    const auto& snap = *handle.snap;
    copy_out(it->second.candidates, out, capacity, len, [&](const RankedCandidate& c) {
      return lr_candidate{snap.id(c.vertex), c.score, c.via_seed_count};
    });
    if (seed_count != nullptr) *seed_count = it->second.seed_count;
    if (candidate_count != nullptr) *candidate_count = it->second.candidate_count;
  });
}

lr_status lr_ranking_write_csv(const lr_ranking* r, const char* path) {
  return guarded([&] {
    const auto& handle = need(r, "ranking");
    write_file(path,
               [&](std::ostream& out) { write_ranking_csv(handle.ranking, *handle.snap, out); });
  });
}

/* ---- labeled datasets ---- */

void lr_dataset_config_default(lr_dataset_config* cfg) {
  if (cfg == nullptr) return;
  *cfg = {LR_DATASET_CLASSIFICATION, 0.1, 10, 0, 1, nullptr, 0};
}

const char* lr_feature_name(size_t i) {
  return i < kFeatureCount ? kFeatureNames[i] : nullptr;
}

lr_status lr_dataset_build(const lr_snapshot* s, const lr_window* w, const lr_features* f,
                           const lr_dataset_config* cfg, lr_dataset** out,
                           lr_build_stats* stats) {
  return guarded([&] {
    const auto& snap = *need(s, "snapshot").snap;
    const auto& win = need(w, "window");
    const auto& feats = need(f, "features");
    const auto& c = need(cfg, "config");
    need_out(out);
    if (win.index != snap.shared_index() || win.window.t_start != snap.t0()) {
      throw InvariantError("window does not follow this snapshot");
    }
    if (feats.snap != s->snap) throw InvariantError("features were computed on another snapshot");
    if (c.roster_len > 0 && c.roster == nullptr) throw ArgumentError("roster is null");
    std::vector<Vertex> roster;
    roster.reserve(c.roster_len);
    for (size_t i = 0; i < c.roster_len; ++i) roster.push_back(snap.vertex(c.roster[i]));
    std::sort(roster.begin(), roster.end());
    roster.erase(std::unique(roster.begin(), roster.end()), roster.end());

    BuiltDataset built;
    switch (c.variant) {
      case LR_DATASET_CLASSIFICATION:
        built = build_classification_dataset(snap, win.window, feats.table, c.neg_cap, c.seed,
                                             roster);
        break;
      case LR_DATASET_THRESHOLD:
        built = build_threshold_dataset(snap, win.window, feats.table, c.th, c.seed, roster,
                                        std::max(1u, c.threads));
        break;
      default:
        throw ArgumentError("unknown dataset variant");
    }
    if (stats != nullptr) {
      const auto& b = built.stats;
      *stats = {b.active_users, b.seed_count,   b.candidate_count,      b.real_count,
                b.false_count,  b.eligible_window_pairs, b.recall()};
    }
    *out = new lr_dataset{std::move(built.dataset)};
  });
}

lr_status lr_dataset_from_rows(const lr_instance* rows, size_t count, lr_dataset** out) {
  return guarded([&] {
    need_out(out);
    if (count > 0 && rows == nullptr) throw ArgumentError("rows is null");
    Dataset ds;
    ds.instances.reserve(count);
    const auto labels = [&] {
      std::vector<lr_label> l(count);
      for (size_t i = 0; i < count; ++i) l[i] = rows[i].label;
      return to_labels(l.data(), count);
    }();
    for (size_t i = 0; i < count; ++i) {
      LabeledInstance inst;
      inst.u = rows[i].u;
      inst.v = rows[i].v;
      std::copy(rows[i].features, rows[i].features + kFeatureCount, inst.features.begin());
      inst.label = labels[i];
      ds.instances.push_back(inst);
    }
    *out = new lr_dataset{std::move(ds)};
  });
}

lr_status lr_dataset_load(const char* path, lr_dataset** out) {
  return guarded([&] {
    need_out(out);
    std::ifstream in(need_str(path, "path"), std::ios::binary);
    if (!in) throw IoError(std::string("cannot open ") + path);
    *out = new lr_dataset{read_dataset(in)};
  });
}

lr_status lr_dataset_write(const lr_dataset* d, const char* path) {
  return guarded([&] {
    const auto& ds = need(d, "dataset").dataset;
    write_file(path, [&](std::ostream& out) { write_dataset(ds, out); });
  });
}

void lr_dataset_free(lr_dataset* d) { delete d; }

size_t lr_dataset_size(const lr_dataset* d) { return d == nullptr ? 0 : d->dataset.size(); }

size_t lr_dataset_count(const lr_dataset* d, lr_label label) {
  if (d == nullptr || (label != LR_LABEL_FALSE && label != LR_LABEL_REAL)) return 0;
  return d->dataset.count(static_cast<Label>(label));
}

lr_status lr_dataset_row(const lr_dataset* d, size_t i, lr_instance* out) {
  return guarded([&] {
    const auto& ds = need(d, "dataset").dataset;
    if (i >= ds.size()) throw ArgumentError("row index out of range");
    if (out == nullptr) throw ArgumentError("out is null");
    const auto& inst = ds.instances[i];
    out->u = inst.u;
    out->v = inst.v;
    std::copy(inst.features.begin(), inst.features.end(), out->features);
    out->label = static_cast<lr_label>(inst.label);
  });
}

lr_status lr_dataset_balance(const lr_dataset* d, uint64_t seed, lr_dataset** out) {
  return guarded([&] {
    const auto& ds = need(d, "dataset").dataset;
    need_out(out);
    *out = new lr_dataset{balance(ds, seed)};
  });
}

/* ---- learners ---- */

void lr_train_config_default(lr_train_config* cfg) {
  if (cfg == nullptr) return;
  const TrainConfig d;
  *cfg = {LR_MODEL_TREE,
          d.tree.min_leaf,
          0,
          d.tree.pruning_confidence,
          d.tree.prune ? 1 : 0,
          d.logistic.learning_rate,
          d.logistic.epochs,
          d.logistic.l2,
          d.nb.variance_floor,
          d.seed};
}

lr_status lr_parse_model_variant(const char* name, lr_model_variant* out) {
  return guarded([&] {
    if (out == nullptr) throw ArgumentError("out is null");
    *out = from_variant(parse_variant(need_str(name, "name")));
  });
}

const char* lr_model_variant_name(lr_model_variant v) {
  switch (v) {
    case LR_MODEL_NB: return "nb";
    case LR_MODEL_LOGISTIC: return "logistic";
    case LR_MODEL_TREE: return "tree";
  }
  return "unknown";
}

lr_status lr_train(const lr_dataset* d, const lr_train_config* cfg, lr_model** out) {
  return guarded([&] {
    const auto& ds = need(d, "dataset").dataset;
    const auto& c = need(cfg, "config");
    need_out(out);
    *out = new lr_model{train(to_matrix(ds), to_train_config(c), to_variant(c.variant))};
  });
}

void lr_model_free(lr_model* m) { delete m; }

lr_status lr_model_info_get(const lr_model* m, lr_model_info* info) {
  return guarded([&] {
    const auto& model = need(m, "model").model;
    if (info == nullptr) throw ArgumentError("info is null");
    *info = {from_variant(model.variant), model.dim, model.tree_size(), model.tree_depth(),
             model.logistic.rate_halvings};
  });
}

lr_status lr_model_predict(const lr_model* m, const double* x, size_t dim, lr_label* label,
                           double* score) {
  return guarded([&] {
    const auto& model = need(m, "model").model;
    const auto p = predict(model, to_span(x, dim, "x"));
    if (label != nullptr) *label = static_cast<lr_label>(p.label);
    if (score != nullptr) *score = p.score;
  });
}

lr_status lr_model_save(const lr_model* m, const char* path) {
  return guarded([&] {
    const auto& model = need(m, "model").model;
    write_file(path, [&](std::ostream& out) { save_model(model, out); });
  });
}

lr_status lr_model_load(const char* path, lr_model** out) {
  return guarded([&] {
    need_out(out);
    std::ifstream in(need_str(path, "path"), std::ios::binary);
    if (!in) throw IoError(std::string("cannot open ") + path);
    *out = new lr_model{load_model(in)};
  });
}

lr_status lr_info_gain(const lr_dataset* d, size_t feature, int bins, double* out) {
  return guarded([&] {
    const auto& ds = need(d, "dataset").dataset;
    if (out == nullptr) throw ArgumentError("out is null");
    if (feature >= kFeatureCount) throw ArgumentError("feature index out of range");
    *out = info_gain(to_matrix(ds), feature, bins);
  });
}

lr_status lr_rank_features(const lr_dataset* d, int bins, lr_feature_gain* out) {
  return guarded([&] {
    const auto& ds = need(d, "dataset").dataset;
    if (out == nullptr) throw ArgumentError("out is null");
    const auto ranked = rank_features(ds, bins);
    for (size_t i = 0; i < ranked.size(); ++i) {
      const auto at = std::find_if(kFeatureNames.begin(), kFeatureNames.end(),
                                   [&](const char* n) { return ranked[i].first == n; });
      out[i] = {static_cast<size_t>(at - kFeatureNames.begin()), ranked[i].second};
    }
  });
}

/* ---- metrics ---- */

lr_status lr_class_metrics_from_counts(size_t tp, size_t fp, size_t tn, size_t fn,
                                       lr_class_metrics* out) {
  return guarded([&] {
    if (out == nullptr) throw ArgumentError("out is null");
    *out = to_c(class_metrics({tp, fp, tn, fn}));
  });
}

lr_status lr_roc_area(const double* scores, const lr_label* labels, size_t count,
                      lr_label positive, double* out) {
  return guarded([&] {
    if (out == nullptr) throw ArgumentError("out is null");
    const auto l = to_labels(labels, count);
    *out = roc_area(to_span(scores, count, "scores"), l, to_labels(&positive, 1)[0]);
  });
}

lr_status lr_prc_area(const double* scores, const lr_label* labels, size_t count,
                      lr_label positive, double* out) {
  return guarded([&] {
    if (out == nullptr) throw ArgumentError("out is null");
    const auto l = to_labels(labels, count);
    *out = prc_area(to_span(scores, count, "scores"), l, to_labels(&positive, 1)[0]);
  });
}

lr_status lr_report_from_scores(const double* scores, const lr_label* labels, size_t count,
                                lr_report** out) {
  return guarded([&] {
    need_out(out);
    const auto l = to_labels(labels, count);
    *out = new lr_report{build_report(to_span(scores, count, "scores"), l)};
  });
}

lr_status lr_cross_validate(const lr_dataset* d, const lr_train_config* cfg, int folds,
                            uint64_t seed, unsigned threads, lr_report** out) {
  return guarded([&] {
    const auto& ds = need(d, "dataset").dataset;
    const auto& c = need(cfg, "config");
    need_out(out);
    auto cv = cross_validate(to_matrix(ds), to_train_config(c), to_variant(c.variant), folds,
                             seed, std::max(1u, threads));
    *out = new lr_report{cv.report};
  });
}

lr_status lr_model_evaluate(const lr_model* m, const lr_dataset* d, lr_report** out) {
  return guarded([&] {
    const auto& model = need(m, "model").model;
    const auto& ds = need(d, "dataset").dataset;
    need_out(out);
    std::vector<double> scores;
    std::vector<Label> labels;
    for (const auto& inst : ds.instances) {
      scores.push_back(predict(model, inst.features).score);
      labels.push_back(inst.label);
    }
    *out = new lr_report{build_report(scores, labels)};
  });
}

void lr_report_free(lr_report* r) { delete r; }

lr_status lr_report_get(const lr_report* r, lr_report_row row, lr_class_metrics* out) {
  return guarded([&] {
    const auto& rep = need(r, "report").report;
    if (out == nullptr) throw ArgumentError("out is null");
    switch (row) {
      case LR_ROW_REAL: *out = to_c(rep.real); return;
      case LR_ROW_FALSE: *out = to_c(rep.fake); return;
      case LR_ROW_WEIGHTED: *out = to_c(rep.weighted); return;
    }
    throw ArgumentError("unknown report row");
  });
}

lr_status lr_report_write_csv(const lr_report* r, const char* path) {
  return guarded([&] {
    const auto& rep = need(r, "report").report;
    write_file(path, [&](std::ostream& out) { write_report_csv(rep, out); });
  });
}

lr_status lr_report_rows(const lr_report* r, const char* prefix, char* buf, size_t capacity,
                         size_t* len) {
  return guarded([&] {
    const auto& rep = need(r, "report").report;
    if (len == nullptr) throw ArgumentError("len is null");
    std::ostringstream out;
    write_report_rows(rep, out, need_str(prefix, "prefix"));
    const auto text = out.str();
    *len = text.size();
    if (buf == nullptr && capacity == 0) return;
    if (buf == nullptr || capacity <= text.size()) {
      throw ArgumentError("buffer too small for report rows");
    }
    std::memcpy(buf, text.c_str(), text.size() + 1);
  });
}

}  // extern "C"
