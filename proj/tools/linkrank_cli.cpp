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

// Command-line driver. Every command writes its outputs and a manifest.json
// into --out; `replay` reruns a manifest.

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "linkrank/linkrank.h"

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInvariant = 3;

struct Failure {
  int code;
  std::string message;
};

int exit_code(lr_status s) {
  switch (s) {
    case LR_OK: return 0;
    case LR_ERR_ARGUMENT: return kExitUsage;
    case LR_ERR_INVARIANT:
    case LR_ERR_INTERNAL: return kExitInvariant;
    default: return kExitData;
  }
}

void check(lr_status s, const std::string& what) {
  if (s != LR_OK) {
    throw Failure{exit_code(s), what + ": " + lr_status_name(s) + ": " + lr_last_error()};
  }
}

// unique_ptr wrappers for the C handles.
template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Graph = std::unique_ptr<lr_graph, Deleter<lr_graph, lr_graph_free>>;
using Snap = std::unique_ptr<lr_snapshot, Deleter<lr_snapshot, lr_snapshot_free>>;
using Window = std::unique_ptr<lr_window, Deleter<lr_window, lr_window_free>>;
using Features = std::unique_ptr<lr_features, Deleter<lr_features, lr_features_free>>;
using Ranking = std::unique_ptr<lr_ranking, Deleter<lr_ranking, lr_ranking_free>>;
using Data = std::unique_ptr<lr_dataset, Deleter<lr_dataset, lr_dataset_free>>;
using ModelPtr = std::unique_ptr<lr_model, Deleter<lr_model, lr_model_free>>;
using Report = std::unique_ptr<lr_report, Deleter<lr_report, lr_report_free>>;

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kExitData, "cannot read " + path};
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw Failure{kExitInvariant, "sha256 unavailable"};
  }
  std::vector<char> buf(1 << 16);
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<size_t>(in.gcount()));
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int n = 0;
  EVP_DigestFinal_ex(ctx.get(), md, &n);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < n; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

std::string fmt(double x) {
  char buf[32];
  lr_format_double(x, buf);
  return buf;
}

// State shared by all commands: flags recorded in the manifest, inputs,
// outputs and derived seeds.
struct Run {
  std::string command;
  std::vector<std::pair<std::string, std::function<Json()>>> params;
  std::vector<std::string> input_flags;  // params naming input files
  std::string out_dir = ".";
  unsigned threads = 1;
  Json seeds = Json::object();
  Json results = Json::object();
  std::vector<std::string> outputs;

  std::string path(const std::string& name) {
    outputs.push_back(name);
    return (fs::path(out_dir) / name).string();
  }

  uint64_t seed(uint64_t master, const char* stream) {
    const auto s = lr_derive_seed(master, stream);
    seeds["master"] = master;
    seeds[stream] = s;
    return s;
  }

  void write_json(const std::string& name, const Json& j) {
    std::ofstream out(path(name), std::ios::binary);
    out << j.dump(2) << '\n';
    if (!out) throw Failure{kExitData, "cannot write " + name};
  }

  void write_text(const std::string& name, const std::string& text) {
    std::ofstream out(path(name), std::ios::binary);
    out << text;
    if (!out) throw Failure{kExitData, "cannot write " + name};
  }

  void write_manifest() {
    Json m;
    m["tool"] = "linkrank";
    m["version"] = lr_version();
    m["command"] = command;
    Json p = Json::object();
    for (const auto& [name, get] : params) p[name] = get();
    m["params"] = p;
    Json inputs = Json::object();
    for (const auto& flag : input_flags) {
      const auto& value = p[flag];
      if (value.is_string() && !value.get<std::string>().empty()) {
        inputs[flag] = sha256_file(value.get<std::string>());
      }
    }
    m["input_sha256"] = inputs;
    m["seeds"] = seeds;
    m["results"] = results;
    Json outs = Json::object();
    for (const auto& name : outputs) outs[name] = sha256_file((fs::path(out_dir) / name).string());
    m["output_sha256"] = outs;
    std::ofstream out(fs::path(out_dir) / "manifest.json", std::ios::binary);
    out << m.dump(2) << '\n';
    if (!out) throw Failure{kExitData, "cannot write manifest.json"};
  }
};

template <typename T>
CLI::Option* flag(CLI::App* sub, Run& run, const std::string& name, T& var,
                  const std::string& help) {
  run.params.emplace_back(name.substr(2), [&var] { return Json(var); });
  return sub->add_option(name, var, help)->capture_default_str();
}

CLI::Option* input(CLI::App* sub, Run& run, const std::string& name, std::string& var,
                   const std::string& help) {
  run.input_flags.push_back(name.substr(2));
  return flag(sub, run, name, var, help)->check(CLI::ExistingFile);
}

// ---- shared pipeline pieces ----

Graph load_graph(const std::string& path) {
  lr_graph* g = nullptr;
  check(lr_graph_load(path.c_str(), &g), "loading " + path);
  return Graph(g);
}

Snap take_snapshot(const lr_graph* g, int64_t t0) {
  lr_snapshot* s = nullptr;
  check(lr_snapshot_at(g, t0, &s), "snapshot");
  return Snap(s);
}

Features compute_features(const lr_snapshot* s, unsigned threads) {
  lr_hits_options opts;
  lr_hits_options_default(&opts);
  opts.threads = threads;
  lr_features* f = nullptr;
  check(lr_features_compute(s, &opts, &f), "features");
  return Features(f);
}

Window make_window(const lr_graph* g, const lr_snapshot* s, int64_t t_end) {
  lr_window* w = nullptr;
  check(lr_window_create(g, s, t_end, &w), "observation window");
  return Window(w);
}

Data load_dataset(const std::string& path) {
  lr_dataset* d = nullptr;
  check(lr_dataset_load(path.c_str(), &d), "loading " + path);
  return Data(d);
}

lr_dataset_variant parse_mode(const std::string& mode) {
  if (mode == "classification") return LR_DATASET_CLASSIFICATION;
  if (mode == "threshold") return LR_DATASET_THRESHOLD;
  throw Failure{kExitUsage, "unknown mode: " + mode};
}

lr_model_variant parse_model(const std::string& name) {
  lr_model_variant v;
  if (lr_parse_model_variant(name.c_str(), &v) != LR_OK) {
    throw Failure{kExitUsage, "unknown variant: " + name};
  }
  return v;
}

Json stats_json(const lr_build_stats& s) {
  Json j;
  j["active_users"] = s.active_users;
  j["seeds"] = s.seed_count;
  j["candidates"] = s.candidate_count;
  j["real"] = s.real_count;
  j["false"] = s.false_count;
  j["eligible_window_pairs"] = s.eligible_window_pairs;
  j["real_link_recall"] = s.recall;
  return j;
}

std::string report_rows(const lr_report* r, const std::string& prefix) {
  size_t len = 0;
  check(lr_report_rows(r, prefix.c_str(), nullptr, 0, &len), "report");
  std::string text(len + 1, '\0');
  check(lr_report_rows(r, prefix.c_str(), text.data(), text.size(), &len), "report");
  text.resize(len);
  return text;
}

Json metrics_json(const lr_report* r) {
  Json j;
  const std::pair<const char*, lr_report_row> rows[] = {
      {"real", LR_ROW_REAL}, {"false", LR_ROW_FALSE}, {"weighted", LR_ROW_WEIGHTED}};
  for (const auto& [name, row] : rows) {
    lr_class_metrics m;
    check(lr_report_get(r, row, &m), "report");
    j[name] = {{"precision", m.precision}, {"recall", m.recall}, {"f_measure", m.f_measure},
               {"mcc", m.mcc}, {"roc_area", m.roc_area}, {"prc_area", m.prc_area}};
  }
  return j;
}

double weighted_f(const lr_report* r) {
  lr_class_metrics m;
  check(lr_report_get(r, LR_ROW_WEIGHTED, &m), "report");
  return m.f_measure;
}

std::string info_gain_csv(const lr_dataset* d, int bins, Json* order) {
  lr_feature_gain gains[LR_FEATURE_COUNT];
  check(lr_rank_features(d, bins, gains), "rank-features");
  std::string text = "feature,info_gain\n";
  for (const auto& g : gains) {
    text += std::string(lr_feature_name(g.feature)) + ',' + fmt(g.gain) + '\n';
    if (order != nullptr) order->push_back(lr_feature_name(g.feature));
  }
  return text;
}

struct TreeFlags {
  size_t min_leaf = 2;
  int max_depth = 0;
  double confidence = 0.25;
  bool no_prune = false;
  int epochs = 200;
  double learning_rate = 0.1;
  double l2 = 1e-4;

  void add(CLI::App* sub, Run& run) {
    flag(sub, run, "--min-leaf", min_leaf, "tree: minimum rows per leaf");
    flag(sub, run, "--max-depth", max_depth, "tree: depth limit, 0 for none");
    flag(sub, run, "--confidence", confidence, "tree: pruning confidence");
    run.params.emplace_back("no-prune", [this] { return Json(no_prune); });
    sub->add_flag("--no-prune", no_prune, "tree: skip pessimistic pruning");
    flag(sub, run, "--epochs", epochs, "logistic: gradient steps");
    flag(sub, run, "--learning-rate", learning_rate, "logistic: initial step size");
    flag(sub, run, "--l2", l2, "logistic: L2 penalty");
  }

  lr_train_config config(lr_model_variant v, uint64_t seed) const {
    lr_train_config c;
    lr_train_config_default(&c);
    c.variant = v;
    c.min_leaf = min_leaf;
    c.max_depth = max_depth;
    c.pruning_confidence = confidence;
    c.prune = no_prune ? 0 : 1;
    c.epochs = epochs;
    c.learning_rate = learning_rate;
    c.l2 = l2;
    c.seed = seed;
    return c;
  }
};

// ---- commands ----

struct Options {
  // inputs
  std::string edges, dataset, model, users;
  // graph timing
  int64_t t0 = 0;
  int64_t t_end = 0;
  // ranking and datasets
  std::vector<double> th{0.1};
  size_t k = 10;
  std::string scoring = "authority";
  std::string mode = "classification";
  size_t neg_cap = 10;
  uint64_t seed = 0;
  // learners
  std::vector<std::string> variants{"nb", "logistic", "tree"};
  std::string variant = "tree";
  int bins = 10;
  int folds = 5;
  TreeFlags tree;
  // histograms
  std::string kind = "degree";
  std::string column = "authority";
  std::string transform = "identity";
  int64_t divisor = 1;
  // generation
  lr_gen_config gen{};
};

void cmd_gen(Options& o, Run& run) {
  auto cfg = o.gen;
  cfg.seed = run.seed(o.seed, "generation");
  lr_graph* raw = nullptr;
  int64_t t0 = 0, t_end = 0;
  check(lr_generate(&cfg, &raw, &t0, &t_end), "generation");
  Graph g(raw);
  check(lr_graph_write(g.get(), run.path("edges.txt").c_str()), "writing edges");
  lr_graph_info info;
  check(lr_graph_info_get(g.get(), &info), "graph info");
  run.results = {{"t0", t0}, {"t_end", t_end}, {"vertices", info.vertices},
                 {"edges", info.edges}};
}

void cmd_ingest_stats(Options& o, Run& run) {
  auto g = load_graph(o.edges);
  lr_graph_info info;
  check(lr_graph_info_get(g.get(), &info), "graph info");
  Json j = {{"lines", info.lines},
            {"edges", info.edges},
            {"vertices", info.vertices},
            {"dropped_self_loops", info.dropped_self_loops},
            {"unique_pairs", info.unique_pairs},
            {"t_min", info.t_min},
            {"t_max", info.t_max}};
  auto s = take_snapshot(g.get(), o.t0);
  lr_snapshot_info si;
  check(lr_snapshot_info_get(s.get(), &si), "snapshot info");
  j["snapshot"] = {{"t0", si.t0}, {"n", si.vertices}, {"m", si.edges},
                   {"max_degree", si.max_degree}, {"dropped_self_loops", info.dropped_self_loops}};
  run.write_json("stats.json", j);
}

void cmd_features(Options& o, Run& run) {
  auto g = load_graph(o.edges);
  auto s = take_snapshot(g.get(), o.t0);
  auto f = compute_features(s.get(), run.threads);
  check(lr_features_write_csv(f.get(), run.path("features.csv").c_str()), "writing features");
  int iterations = 0;
  double residual = 0;
  check(lr_features_hits_info(f.get(), &iterations, &residual), "hits");
  run.results = {{"hits_iterations", iterations}, {"hits_residual", residual}};
}

void cmd_histogram(Options& o, Run& run) {
  auto g = load_graph(o.edges);
  const auto out = run.path("histogram.csv");
  if (o.kind == "degree") {
    check(lr_graph_write_degree_histogram(g.get(), out.c_str()), "histogram");
  } else if (o.kind == "links-per-step") {
    check(lr_graph_write_links_per_step(g.get(), o.divisor, out.c_str()), "histogram");
  } else if (o.kind == "feature") {
    auto s = take_snapshot(g.get(), o.t0);
    auto f = compute_features(s.get(), run.threads);
    check(lr_features_write_histogram(f.get(), o.column.c_str(), o.bins, o.transform.c_str(),
                                      out.c_str()),
          "histogram");
  } else if (o.kind == "jaccard") {
    auto s = take_snapshot(g.get(), o.t0);
    check(lr_snapshot_write_jaccard_histogram(s.get(), o.bins, o.transform.c_str(), out.c_str()),
          "histogram");
  } else {
    throw Failure{kExitUsage, "unknown histogram kind: " + o.kind};
  }
}

std::vector<uint64_t> read_users(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Failure{kExitData, "cannot read " + path};
  std::vector<uint64_t> users;
  std::string line;
  size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty() || line[0] == '#') continue;
    try {
      size_t used = 0;
      users.push_back(std::stoull(line, &used));
      if (line.find_first_not_of(" \t\r", used) != std::string::npos) throw std::exception();
    } catch (const std::exception&) {
      throw Failure{kExitData, path + ": line " + std::to_string(n) + ": bad user id"};
    }
  }
  return users;
}

void cmd_rank(Options& o, Run& run) {
  if (o.th.size() != 1) throw Failure{kExitUsage, "rank takes exactly one --th"};
  auto g = load_graph(o.edges);
  auto s = take_snapshot(g.get(), o.t0);
  auto f = compute_features(s.get(), run.threads);
  std::vector<uint64_t> users;
  if (!o.users.empty()) {
    users = read_users(o.users);
  } else {
    size_t len = 0;
    check(lr_snapshot_vertices(s.get(), nullptr, 0, &len), "vertices");
    users.resize(len);
    check(lr_snapshot_vertices(s.get(), users.data(), users.size(), &len), "vertices");
  }
  lr_rank_config cfg;
  lr_rank_config_default(&cfg);
  cfg.th = o.th[0];
  cfg.k = o.k;
  cfg.scoring = o.scoring.c_str();
  cfg.threads = run.threads;
  lr_ranking* raw = nullptr;
  check(lr_rank(s.get(), f.get(), users.data(), users.size(), &cfg, &raw), "rank");
  Ranking r(raw);
  check(lr_ranking_write_csv(r.get(), run.path("ranking.csv").c_str()), "writing ranking");
  run.results = {{"users", users.size()}, {"failed_users", lr_ranking_failed_count(r.get())}};
  if (lr_ranking_failed_count(r.get()) > 0) {
    std::cerr << "warning: " << lr_ranking_failed_count(r.get())
              << " users not present in the snapshot\n";
  }
}

Data build(const lr_snapshot* s, const lr_window* w, const lr_features* f, lr_dataset_variant v,
           double th, size_t neg_cap, uint64_t seed, unsigned threads, lr_build_stats* stats) {
  lr_dataset_config cfg;
  lr_dataset_config_default(&cfg);
  cfg.variant = v;
  cfg.th = th;
  cfg.neg_cap = neg_cap;
  cfg.seed = seed;
  cfg.threads = threads;
  lr_dataset* d = nullptr;
  check(lr_dataset_build(s, w, f, &cfg, &d, stats), "building dataset");
  return Data(d);
}

void cmd_build_dataset(Options& o, Run& run) {
  const auto mode = parse_mode(o.mode);
  if (mode == LR_DATASET_THRESHOLD && o.th.size() != 1) {
    throw Failure{kExitUsage, "build-dataset takes exactly one --th"};
  }
  auto g = load_graph(o.edges);
  auto s = take_snapshot(g.get(), o.t0);
  auto f = compute_features(s.get(), run.threads);
  auto w = make_window(g.get(), s.get(), o.t_end);
  lr_build_stats stats;
  auto d = build(s.get(), w.get(), f.get(), mode, o.th[0], o.neg_cap,
                 run.seed(o.seed, "negatives"), run.threads, &stats);
  check(lr_dataset_write(d.get(), run.path("dataset.csv").c_str()), "writing dataset");
  run.results = stats_json(stats);
}

void cmd_balance(Options& o, Run& run) {
  auto d = load_dataset(o.dataset);
  lr_dataset* raw = nullptr;
  check(lr_dataset_balance(d.get(), run.seed(o.seed, "balance"), &raw), "balance");
  Data b(raw);
  check(lr_dataset_write(b.get(), run.path("dataset.csv").c_str()), "writing dataset");
  run.results = {{"rows", lr_dataset_size(b.get())}};
}

void cmd_rank_features(Options& o, Run& run) {
  auto d = load_dataset(o.dataset);
  run.write_text("info_gain.csv", info_gain_csv(d.get(), o.bins, nullptr));
}

void cmd_train(Options& o, Run& run) {
  auto d = load_dataset(o.dataset);
  const auto cfg = o.tree.config(parse_model(o.variant), run.seed(o.seed, "training"));
  lr_model* raw = nullptr;
  check(lr_train(d.get(), &cfg, &raw), "training");
  ModelPtr m(raw);
  check(lr_model_save(m.get(), run.path("model.json").c_str()), "writing model");
  lr_model_info info;
  check(lr_model_info_get(m.get(), &info), "model info");
  run.results = {{"variant", lr_model_variant_name(info.variant)}, {"dim", info.dim}};
  if (info.variant == LR_MODEL_TREE) {
    run.results["tree_nodes"] = info.tree_nodes;
    run.results["tree_depth"] = info.tree_depth;
  }
  if (info.variant == LR_MODEL_LOGISTIC) run.results["rate_halvings"] = info.rate_halvings;
}

void cmd_evaluate(Options& o, Run& run) {
  auto d = load_dataset(o.dataset);
  lr_report* raw = nullptr;
  if (!o.model.empty()) {
    lr_model* m = nullptr;
    check(lr_model_load(o.model.c_str(), &m), "loading model");
    ModelPtr model(m);
    check(lr_model_evaluate(model.get(), d.get(), &raw), "evaluate");
  } else {
    const auto cfg = o.tree.config(parse_model(o.variant), run.seed(o.seed, "training"));
    check(lr_cross_validate(d.get(), &cfg, o.folds, run.seed(o.seed, "folds"), run.threads, &raw),
          "cross-validation");
  }
  Report r(raw);
  check(lr_report_write_csv(r.get(), run.path("report.csv").c_str()), "writing report");
  run.results = metrics_json(r.get());
}

void cmd_pipeline(Options& o, Run& run) {
  const auto mode = parse_mode(o.mode);
  std::vector<lr_model_variant> solvers;
  for (const auto& v : o.variants) solvers.push_back(parse_model(v));

  auto g = load_graph(o.edges);
  auto s = take_snapshot(g.get(), o.t0);
  // Features see only the snapshot; the window is built afterwards and the
  // dataset builder rejects a feature table from any other snapshot.
  auto f = compute_features(s.get(), run.threads);
  auto w = make_window(g.get(), s.get(), o.t_end);

  const auto neg_seed = run.seed(o.seed, "negatives");
  const auto bal_seed = run.seed(o.seed, "balance");
  const auto fold_seed = run.seed(o.seed, "folds");
  const auto train_seed = run.seed(o.seed, "training");

  std::vector<double> thresholds = o.th;
  if (mode == LR_DATASET_CLASSIFICATION) thresholds = {0.0};
  Json runs = Json::array();
  for (double th : thresholds) {
    const std::string tag = mode == LR_DATASET_THRESHOLD ? "_th" + fmt(th) : "";
    Json entry;
    if (mode == LR_DATASET_THRESHOLD) entry["th"] = th;
    lr_build_stats stats;
    auto d = build(s.get(), w.get(), f.get(), mode, th, o.neg_cap, neg_seed, run.threads, &stats);
    check(lr_dataset_write(d.get(), run.path("dataset" + tag + ".csv").c_str()), "writing dataset");
    entry["dataset"] = stats_json(stats);
    entry["dataset"]["rows"] = lr_dataset_size(d.get());

    lr_dataset* raw = nullptr;
    const auto bs = lr_dataset_balance(d.get(), bal_seed, &raw);
    if (bs == LR_ERR_BALANCE) {
      // A threshold can leave one class empty; report it and continue.
      entry["skipped"] = lr_last_error();
      std::cerr << "warning: " << (tag.empty() ? "dataset" : tag.substr(1)) << ": "
                << lr_last_error() << '\n';
      runs.push_back(entry);
      continue;
    }
    check(bs, "balance");
    Data b(raw);
    check(lr_dataset_write(b.get(), run.path("balanced" + tag + ".csv").c_str()),
          "writing dataset");
    entry["balanced_rows"] = lr_dataset_size(b.get());
    const auto per_class = lr_dataset_count(b.get(), LR_LABEL_REAL);
    if (o.folds > 1 && per_class < static_cast<std::size_t>(o.folds)) {
      const std::string why = std::to_string(per_class) + " rows per class is fewer than " +
                              std::to_string(o.folds) + " folds";
      entry["skipped"] = why;
      std::cerr << "warning: " << (tag.empty() ? "dataset" : tag.substr(1)) << ": " << why << '\n';
      runs.push_back(entry);
      continue;
    }

    Json order = Json::array();
    run.write_text("info_gain" + tag + ".csv", info_gain_csv(b.get(), o.bins, &order));
    entry["info_gain_order"] = order;

    std::string combined = std::string("solver,") +
                           "class,tp_rate,fp_rate,precision,recall,f_measure,mcc,roc_area,prc_area\n";
    Json solver_json = Json::object();
    for (auto v : solvers) {
      const auto cfg = o.tree.config(v, train_seed);
      lr_report* rr = nullptr;
      check(lr_cross_validate(b.get(), &cfg, o.folds, fold_seed, run.threads, &rr),
            std::string("cross-validation ") + lr_model_variant_name(v));
      Report r(rr);
      const std::string name = lr_model_variant_name(v);
      check(lr_report_write_csv(r.get(), run.path("report_" + name + tag + ".csv").c_str()),
            "writing report");
      combined += report_rows(r.get(), name);
      solver_json[name] = metrics_json(r.get());
      if (v == LR_MODEL_TREE) {
        auto unpruned_cfg = cfg;
        unpruned_cfg.prune = unpruned_cfg.prune ? 0 : 1;
        lr_report* ur = nullptr;
        check(lr_cross_validate(b.get(), &unpruned_cfg, o.folds, fold_seed, run.threads, &ur),
              "cross-validation tree");
        Report other(ur);
        const double with = cfg.prune ? weighted_f(r.get()) : weighted_f(other.get());
        const double without = cfg.prune ? weighted_f(other.get()) : weighted_f(r.get());
        entry["pruning_f_delta"] = with - without;
      }
    }
    run.write_text("report" + tag + ".csv", combined);
    entry["solvers"] = solver_json;
    runs.push_back(entry);
  }
  run.results["runs"] = runs;
  run.write_json("summary.json", run.results);
}

struct Command {
  std::string name;
  std::string help;
  void (*body)(Options&, Run&);
};

const std::vector<Command>& commands() {
  static const std::vector<Command> list = {
      {"gen", "generate a synthetic temporal graph", cmd_gen},
      {"ingest-stats", "edge-list and snapshot statistics", cmd_ingest_stats},
      {"features", "global vertex features of the snapshot", cmd_features},
      {"histogram", "degree, links-per-step, feature or Jaccard histogram", cmd_histogram},
      {"rank", "top-k link candidates per user", cmd_rank},
      {"build-dataset", "labeled real/false link dataset", cmd_build_dataset},
      {"balance", "undersample the majority class", cmd_balance},
      {"rank-features", "information gain of each feature", cmd_rank_features},
      {"train", "fit a classifier", cmd_train},
      {"evaluate", "score a model, or cross-validate a variant", cmd_evaluate},
      {"pipeline", "snapshot, features, dataset, balance, cross-validation, report",
       cmd_pipeline},
  };
  return list;
}

// Registers the flags each command uses and records them for the manifest.
void add_flags(const std::string& name, CLI::App* sub, Options& o, Run& run) {
  const auto is = [&](std::initializer_list<const char*> names) {
    for (const char* n : names) {
      if (name == n) return true;
    }
    return false;
  };
  if (is({"ingest-stats", "features", "histogram", "rank", "build-dataset", "pipeline"})) {
    input(sub, run, "--edges", o.edges, "edge-list file")->required();
  }
  if (is({"balance", "rank-features", "train", "evaluate"})) {
    input(sub, run, "--dataset", o.dataset, "dataset CSV")->required();
  }
  if (is({"ingest-stats", "features", "histogram", "rank"})) {
    flag(sub, run, "--t0", o.t0, "snapshot cutoff");
  }
  if (is({"build-dataset", "pipeline"})) {
    flag(sub, run, "--t0", o.t0, "snapshot cutoff")->required();
    flag(sub, run, "--t-end", o.t_end, "end of the observation window")->required();
    flag(sub, run, "--mode", o.mode, "classification | threshold");
    flag(sub, run, "--neg-cap", o.neg_cap, "false links sampled per active user");
  }
  if (is({"rank", "build-dataset"})) flag(sub, run, "--th", o.th, "locality threshold");
  if (name == "pipeline") {
    o.th = {0.1, 0.2, 0.3};
    flag(sub, run, "--th", o.th, "locality threshold (repeatable)");
    flag(sub, run, "--variant", o.variants, "solvers (repeatable): nb, logistic, tree");
  }
  if (name == "rank") {
    flag(sub, run, "--k", o.k, "candidates kept per user");
    flag(sub, run, "--scoring", o.scoring, "authority | degree_norm | transitivity | weighted:a,d,t");
    input(sub, run, "--users", o.users, "file of user ids, one per line (default: all)");
  }
  if (is({"gen", "build-dataset", "balance", "train", "evaluate", "pipeline"})) {
    flag(sub, run, "--seed", o.seed, "master seed");
  }
  if (is({"train", "evaluate"})) flag(sub, run, "--variant", o.variant, "nb | logistic | tree");
  if (is({"train", "evaluate", "pipeline"})) o.tree.add(sub, run);
  if (is({"evaluate", "pipeline"})) flag(sub, run, "--folds", o.folds, "cross-validation folds");
  if (name == "evaluate") input(sub, run, "--model", o.model, "saved model; omit to cross-validate");
  if (is({"histogram", "rank-features", "pipeline"})) flag(sub, run, "--bins", o.bins, "bins");
  if (name == "histogram") {
    flag(sub, run, "--kind", o.kind, "degree | links-per-step | feature | jaccard");
    flag(sub, run, "--column", o.column, "authority | hub | degree_norm | transitivity");
    flag(sub, run, "--transform", o.transform, "identity | log1p");
    flag(sub, run, "--divisor", o.divisor, "timestamp units per step");
  }
  if (name == "gen") {
    lr_gen_config_default(&o.gen);
    flag(sub, run, "--n", o.gen.n, "vertices");
    flag(sub, run, "--m", o.gen.m_per_step, "links per arriving vertex");
    flag(sub, run, "--t0-fraction", o.gen.t0_fraction, "share of growth links up to t0");
    flag(sub, run, "--window-edges", o.gen.window_edges, "planted links after t0");
    flag(sub, run, "--triad", o.gen.triad_prob, "triadic closure probability");
    flag(sub, run, "--authority-bias", o.gen.authority_bias, "planted degree exponent");
    flag(sub, run, "--locality-bias", o.gen.locality_bias, "planted common-neighbor exponent");
    flag(sub, run, "--noise", o.gen.noise, "share of uniform planted links");
  }
}

int run_command(const std::vector<std::string>& args);

int replay(const std::string& manifest_path, const std::string& out, unsigned threads) {
  std::ifstream in(manifest_path);
  if (!in) throw Failure{kExitData, "cannot read " + manifest_path};
  Json m;
  try {
    m = Json::parse(in);
  } catch (const Json::exception& e) {
    throw Failure{kExitData, manifest_path + ": " + e.what()};
  }
  if (!m.contains("command") || !m.contains("params")) {
    throw Failure{kExitData, manifest_path + ": not a run manifest"};
  }
  const Json inputs = m.value("input_sha256", Json::object());
  for (const auto& [flag_name, digest] : inputs.items()) {
    const auto path = m["params"][flag_name].get<std::string>();
    if (sha256_file(path) != digest.get<std::string>()) {
      throw Failure{kExitData, "input " + path + " changed since the manifest was written"};
    }
  }
  std::vector<std::string> args = {m["command"].get<std::string>()};
  for (const auto& [key, value] : m["params"].items()) {
    const auto one = [&](const Json& v) {
      args.push_back("--" + key);
      args.push_back(v.is_string() ? v.get<std::string>() : v.dump());
    };
    if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back("--" + key);
    } else if (value.is_array()) {
      for (const auto& v : value) one(v);
    } else if (!(value.is_string() && value.get<std::string>().empty())) {
      one(value);
    }
  }
  args.push_back("--out");
  args.push_back(out);
  args.push_back("--threads");
  args.push_back(std::to_string(threads));
  return run_command(args);
}

int run_command(const std::vector<std::string>& args) {
  CLI::App app{"linkrank: link prediction on temporal graphs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", lr_version());
  Options o;
  std::vector<std::unique_ptr<Run>> runs;
  std::vector<std::pair<CLI::App*, const Command*>> subs;
  for (const auto& c : commands()) {
    auto* sub = app.add_subcommand(c.name, c.help);
    runs.push_back(std::make_unique<Run>());
    auto& run = *runs.back();
    run.command = c.name;
    add_flags(c.name, sub, o, run);
    sub->add_option("--out", run.out_dir, "output directory")->capture_default_str();
    sub->add_option("--threads", run.threads, "worker threads")
        ->capture_default_str()
        ->check(CLI::Range(1u, 256u));
    subs.emplace_back(sub, &c);
  }
  std::string manifest, replay_out = ".";
  unsigned replay_threads = 1;
  auto* rp = app.add_subcommand("replay", "rerun the command recorded in a manifest");
  rp->add_option("--manifest", manifest, "manifest.json of an earlier run")
      ->required()
      ->check(CLI::ExistingFile);
  rp->add_option("--out", replay_out, "output directory")->capture_default_str();
  rp->add_option("--threads", replay_threads, "worker threads")->check(CLI::Range(1u, 256u));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }
  if (rp->parsed()) return replay(manifest, replay_out, replay_threads);
  for (size_t i = 0; i < subs.size(); ++i) {
    if (!subs[i].first->parsed()) continue;
    auto& run = *runs[i];
    std::error_code ec;
    fs::create_directories(run.out_dir, ec);
    if (ec) throw Failure{kExitData, "cannot create " + run.out_dir + ": " + ec.message()};
    subs[i].second->body(o, run);
    run.write_manifest();
    return 0;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    return run_command(args);
  } catch (const Failure& f) {
    std::cerr << "linkrank: " << f.message << '\n';
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "linkrank: internal error: " << e.what() << '\n';
    return kExitInvariant;
  }
}
