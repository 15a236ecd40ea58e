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

#include "linkrank/learners.hpp"

#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <functional>
#include <istream>
#include <json.hpp>
#include <limits>
#include <numeric>
#include <ostream>

#include "linkrank/common.hpp"
#include "linkrank/error.hpp"

namespace linkrank {

void FeatureMatrix::add_row(std::span<const double> x, Label label) {
  if (cols == 0 && labels.empty()) cols = x.size();
  if (x.size() != cols) throw ArgumentError("row has wrong number of features");
  values.insert(values.end(), x.begin(), x.end());
  labels.push_back(label);
}

FeatureMatrix to_matrix(const Dataset& ds) {
  FeatureMatrix m;
  m.cols = kFeatureCount;
  m.values.reserve(ds.size() * kFeatureCount);
  for (const auto& x : ds.instances) m.add_row(x.features, x.label);
  return m;
}

ModelVariant parse_variant(std::string_view name) {
  if (name == "nb" || name == "bayes") return ModelVariant::kGaussianNb;
  if (name == "logistic" || name == "log") return ModelVariant::kLogistic;
  if (name == "tree" || name == "j48") return ModelVariant::kTree;
  throw ArgumentError("unknown model variant '" + std::string(name) + "'");
}

std::string variant_name(ModelVariant v) {
  switch (v) {
    case ModelVariant::kGaussianNb: return "nb";
    case ModelVariant::kLogistic: return "logistic";
    case ModelVariant::kTree: return "tree";
  }
  return "?";
}

void TrainConfig::validate() const {
  if (tree.min_leaf < 1) throw ArgumentError("min_leaf must be positive");
  if (tree.max_depth && *tree.max_depth < 0) throw ArgumentError("max_depth must be >= 0");
  if (!(tree.pruning_confidence > 0.0 && tree.pruning_confidence <= 0.5)) {
    throw ArgumentError("pruning confidence must be in (0, 0.5]");
  }
  if (!(logistic.learning_rate > 0.0)) throw ArgumentError("learning rate must be positive");
  if (logistic.epochs < 0) throw ArgumentError("epochs must be non-negative");
  if (!(logistic.l2 >= 0.0)) throw ArgumentError("l2 must be non-negative");
  if (!(nb.variance_floor > 0.0)) throw ArgumentError("variance floor must be positive");
}

namespace {

constexpr int kFalse = 0;
constexpr int kReal = 1;

int cls(Label l) { return l == Label::kReal ? kReal : kFalse; }

double entropy2(std::size_t a, std::size_t b) {
  const double n = static_cast<double>(a + b);
  if (n == 0.0) return 0.0;
  double h = 0.0;
  for (std::size_t c : {a, b}) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / n;
    h -= p * std::log2(p);
  }
  return h;
}

std::array<std::size_t, 2> class_counts(const FeatureMatrix& data) {
  std::array<std::size_t, 2> counts{};
  for (Label l : data.labels) ++counts[static_cast<std::size_t>(cls(l))];
  return counts;
}

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// log(1 + exp(z)) without overflow.
double softplus(double z) { return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

// ---- Gaussian naive Bayes -------------------------------------------------

GaussianNbParams train_nb(const FeatureMatrix& data, const NaiveBayesConfig& cfg) {
  const auto counts = class_counts(data);
  const std::size_t d = data.cols;
  GaussianNbParams p;
  for (int c = 0; c < 2; ++c) {
    p.mean[c].assign(d, 0.0);
    p.variance[c].assign(d, 0.0);
    p.log_prior[c] = std::log(static_cast<double>(counts[c]) / static_cast<double>(data.rows()));
  }
  for (std::size_t i = 0; i < data.rows(); ++i) {
    const int c = cls(data.labels[i]);
    for (std::size_t j = 0; j < d; ++j) p.mean[c][j] += data.at(i, j);
  }
  for (int c = 0; c < 2; ++c) {
    for (double& m : p.mean[c]) m /= static_cast<double>(counts[c]);
  }
  for (std::size_t i = 0; i < data.rows(); ++i) {
    const int c = cls(data.labels[i]);
    for (std::size_t j = 0; j < d; ++j) {
      const double diff = data.at(i, j) - p.mean[c][j];
      p.variance[c][j] += diff * diff;
    }
  }
  for (int c = 0; c < 2; ++c) {
    for (double& v : p.variance[c]) {
      v = std::max(v / static_cast<double>(counts[c]), cfg.variance_floor);
    }
  }
  return p;
}

// ---- Logistic regression --------------------------------------------------

struct Standardized {
  std::vector<double> x;  // row-major
  std::vector<double> y;
};

Standardized standardize(const FeatureMatrix& data, const LogisticParams& p) {
  Standardized s;
  s.x.resize(data.values.size());
  s.y.resize(data.rows());
  for (std::size_t i = 0; i < data.rows(); ++i) {
    for (std::size_t j = 0; j < data.cols; ++j) {
      s.x[i * data.cols + j] = (data.at(i, j) - p.center[j]) / p.scale[j];
    }
    s.y[i] = data.labels[i] == Label::kReal ? 1.0 : 0.0;
  }
  return s;
}

double loss_of(const Standardized& s, std::size_t d, const std::vector<double>& w, double b,
               double l2) {
  const std::size_t n = s.y.size();
  double loss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double z = b;
    for (std::size_t j = 0; j < d; ++j) z += w[j] * s.x[i * d + j];
    loss += softplus(z) - s.y[i] * z;
  }
  loss /= static_cast<double>(n);
  double reg = 0.0;
  for (double v : w) reg += v * v;
  return loss + 0.5 * l2 * reg;
}

LogisticParams train_logistic(const FeatureMatrix& data, const LogisticConfig& cfg) {
  const std::size_t n = data.rows();
  const std::size_t d = data.cols;
  LogisticParams p;
  p.weights.assign(d, 0.0);
  p.center.assign(d, 0.0);
  p.scale.assign(d, 1.0);
  for (std::size_t j = 0; j < d; ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += data.at(i, j);
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double diff = data.at(i, j) - mean;
      var += diff * diff;
    }
    var /= static_cast<double>(n);
    p.center[j] = mean;
    p.scale[j] = var > 0.0 ? std::sqrt(var) : 1.0;
  }
  const auto s = standardize(data, p);

  double rate = cfg.learning_rate;
  double loss = loss_of(s, d, p.weights, p.bias, cfg.l2);
  p.loss_history.push_back(loss);
  std::vector<double> grad(d);
  std::vector<double> trial(d);
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::fill(grad.begin(), grad.end(), 0.0);
    double grad_b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double z = p.bias;
      for (std::size_t j = 0; j < d; ++j) z += p.weights[j] * s.x[i * d + j];
      const double err = sigmoid(z) - s.y[i];
      for (std::size_t j = 0; j < d; ++j) grad[j] += err * s.x[i * d + j];
      grad_b += err;
    }
    for (std::size_t j = 0; j < d; ++j) {
      grad[j] = grad[j] / static_cast<double>(n) + cfg.l2 * p.weights[j];
    }
    grad_b /= static_cast<double>(n);

    // Halve the rate until the step does not increase the loss.
    while (true) {
      for (std::size_t j = 0; j < d; ++j) trial[j] = p.weights[j] - rate * grad[j];
      const double trial_b = p.bias - rate * grad_b;
      const double trial_loss = loss_of(s, d, trial, trial_b, cfg.l2);
      if (trial_loss <= loss) {
        p.weights = trial;
        p.bias = trial_b;
        loss = trial_loss;
        break;
      }
      rate /= 2.0;
      ++p.rate_halvings;
      if (rate < 1e-300) break;
    }
    p.loss_history.push_back(loss);
  }
  return p;
}

// ---- Decision tree --------------------------------------------------------

// Upper confidence bound on errors minus observed errors, as used by C4.5's
// pessimistic pruning.
double added_errors(double n, double e, double cf) {
  if (e < 1.0) {
    const double base = n * (1.0 - std::pow(cf, 1.0 / n));
    if (e == 0.0) return base;
    return base + e * (added_errors(n, 1.0, cf) - base);
  }
  if (e + 0.5 >= n) return std::max(n - e, 0.0);
  const double z = boost::math::quantile(boost::math::normal(), 1.0 - cf);
  const double f = (e + 0.5) / n;
  const double r = (f + z * z / (2 * n) +
                    z * std::sqrt(f / n - f * f / n + z * z / (4 * n * n))) /
                   (1 + z * z / n);
  return r * n - e;
}

class TreeBuilder {
 public:
  TreeBuilder(const FeatureMatrix& data, const TreeConfig& cfg) : data_(data), cfg_(cfg) {}

  std::vector<TreeNode> build() {
    std::vector<std::size_t> rows(data_.rows());
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    grow(rows, 0);
    if (cfg_.prune) prune(0);
    return compact();
  }

 private:
  int grow(std::vector<std::size_t>& rows, int depth) {
    const int id = static_cast<int>(nodes_.size());
    nodes_.emplace_back();
    for (std::size_t r : rows) {
      if (data_.labels[r] == Label::kReal) {
        ++nodes_[id].real_count;
      } else {
        ++nodes_[id].false_count;
      }
    }
    const std::size_t n = rows.size();
    const bool pure = nodes_[id].real_count == 0 || nodes_[id].false_count == 0;
    const bool depth_capped = cfg_.max_depth && depth >= *cfg_.max_depth;
    if (pure || depth_capped || n < 2 * cfg_.min_leaf) return id;

    const double parent_h = entropy2(nodes_[id].real_count, nodes_[id].false_count);
    // Zero-gain splits are allowed so that XOR-like structure can still be
    // separated; the earliest best split wins and pruning removes dead ones.
    double best_gain = -1.0;
    int best_feature = -1;
    double best_threshold = 0.0;
    std::vector<std::size_t> order = rows;
    for (std::size_t f = 0; f < data_.cols; ++f) {
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return data_.at(a, f) < data_.at(b, f);
      });
      std::size_t left_real = 0;
      std::size_t left_false = 0;
      for (std::size_t i = 0; i + 1 < n; ++i) {
        if (data_.labels[order[i]] == Label::kReal) {
          ++left_real;
        } else {
          ++left_false;
        }
        const double lo = data_.at(order[i], f);
        const double hi = data_.at(order[i + 1], f);
        if (lo == hi) continue;
        const std::size_t nl = i + 1;
        const std::size_t nr = n - nl;
        if (nl < cfg_.min_leaf || nr < cfg_.min_leaf) continue;
        const double mid = lo + (hi - lo) / 2.0;
        if (!(mid > lo && mid < hi)) continue;
        const double gain =
            parent_h -
            (static_cast<double>(nl) * entropy2(left_real, left_false) +
             static_cast<double>(nr) *
                 entropy2(nodes_[id].real_count - left_real, nodes_[id].false_count - left_false)) /
                static_cast<double>(n);
        if (gain > best_gain) {
          best_gain = gain;
          best_feature = static_cast<int>(f);
          best_threshold = mid;
        }
      }
    }
    if (best_feature < 0) return id;

    std::vector<std::size_t> left;
    std::vector<std::size_t> right;
    for (std::size_t r : rows) {
      (data_.at(r, static_cast<std::size_t>(best_feature)) <= best_threshold ? left : right)
          .push_back(r);
    }
    std::vector<std::size_t>().swap(rows);
    nodes_[id].feature = best_feature;
    nodes_[id].threshold = best_threshold;
    const int l = grow(left, depth + 1);
    nodes_[id].left = l;
    const int r = grow(right, depth + 1);
    nodes_[id].right = r;
    return id;
  }

  double leaf_estimate(const TreeNode& node) const {
    const double n = static_cast<double>(node.real_count + node.false_count);
    const double e = static_cast<double>(std::min(node.real_count, node.false_count));
    return e + added_errors(n, e, cfg_.pruning_confidence);
  }

  // Bottom-up subtree replacement; returns the estimated errors of the
  // (possibly pruned) subtree.
  double prune(int id) {
    TreeNode& node = nodes_[id];
    if (node.is_leaf()) return leaf_estimate(node);
    const double subtree = prune(node.left) + prune(nodes_[id].right);
    const double as_leaf = leaf_estimate(nodes_[id]);
    if (as_leaf <= subtree + 0.1) {
      nodes_[id].feature = -1;
      nodes_[id].left = nodes_[id].right = -1;
      return as_leaf;
    }
    return subtree;
  }

  std::vector<TreeNode> compact() const {
    std::vector<TreeNode> out;
    std::function<int(int)> copy = [&](int id) -> int {
      const int at = static_cast<int>(out.size());
      out.push_back(nodes_[id]);
      if (!nodes_[id].is_leaf()) {
        const int l = copy(nodes_[id].left);
        out[at].left = l;
        const int r = copy(nodes_[id].right);
        out[at].right = r;
      }
      return at;
    };
    copy(0);
    return out;
  }

  const FeatureMatrix& data_;
  const TreeConfig& cfg_;
  std::vector<TreeNode> nodes_;
};

const TreeNode& tree_leaf(const Model& model, std::span<const double> x) {
  int id = 0;
  while (!model.tree[id].is_leaf()) {
    const auto& node = model.tree[id];
    id = x[static_cast<std::size_t>(node.feature)] <= node.threshold ? node.left : node.right;
  }
  return model.tree[id];
}

}  // namespace

std::size_t Model::tree_size() const {
  if (tree.empty()) return 0;
  std::size_t count = 0;
  std::vector<int> stack{0};
  while (!stack.empty()) {
    const int id = stack.back();
    stack.pop_back();
    ++count;
    if (!tree[id].is_leaf()) {
      stack.push_back(tree[id].left);
      stack.push_back(tree[id].right);
    }
  }
  return count;
}

int Model::tree_depth() const {
  if (tree.empty()) return 0;
  std::function<int(int)> depth = [&](int id) -> int {
    if (tree[id].is_leaf()) return 0;
    return 1 + std::max(depth(tree[id].left), depth(tree[id].right));
  };
  return depth(0);
}

Model train(const FeatureMatrix& data, const TrainConfig& cfg, ModelVariant variant) {
  cfg.validate();
  if (data.cols == 0) throw ArgumentError("training data has no features");
  const auto counts = class_counts(data);
  const std::size_t needed = variant == ModelVariant::kTree ? 1 : 2;
  if (counts[kReal] < needed || counts[kFalse] < needed) {
    throw TrainingError("training needs at least " + std::to_string(needed) +
                        " instances of each class (got " + std::to_string(counts[kReal]) +
                        " real, " + std::to_string(counts[kFalse]) + " false)");
  }
  Model model;
  model.variant = variant;
  model.dim = data.cols;
  switch (variant) {
    case ModelVariant::kGaussianNb: model.nb = train_nb(data, cfg.nb); break;
    case ModelVariant::kLogistic: model.logistic = train_logistic(data, cfg.logistic); break;
    case ModelVariant::kTree: model.tree = TreeBuilder(data, cfg.tree).build(); break;
  }
  return model;
}

std::array<double, 2> nb_posteriors(const Model& model, std::span<const double> x) {
  if (x.size() != model.dim) throw ArgumentError("feature vector has wrong dimension");
  constexpr double kLog2Pi = 1.8378770664093453;
  std::array<double, 2> logp{};
  for (int c = 0; c < 2; ++c) {
    double lp = model.nb.log_prior[c];
    for (std::size_t j = 0; j < model.dim; ++j) {
      const double var = model.nb.variance[c][j];
      const double diff = x[j] - model.nb.mean[c][j];
      lp += -0.5 * (kLog2Pi + std::log(var)) - diff * diff / (2.0 * var);
    }
    logp[c] = lp;
  }
  const double top = std::max(logp[0], logp[1]);
  const double e0 = std::exp(logp[0] - top);
  const double e1 = std::exp(logp[1] - top);
  return {e0 / (e0 + e1), e1 / (e0 + e1)};
}

Prediction predict(const Model& model, std::span<const double> x) {
  if (x.size() != model.dim) {
    throw ArgumentError("feature vector has " + std::to_string(x.size()) +
                        " values, model expects " + std::to_string(model.dim));
  }
  double score = 0.5;
  switch (model.variant) {
    case ModelVariant::kGaussianNb: score = nb_posteriors(model, x)[kReal]; break;
    case ModelVariant::kLogistic: {
      const auto& p = model.logistic;
      double z = p.bias;
      for (std::size_t j = 0; j < model.dim; ++j) {
        z += p.weights[j] * (x[j] - p.center[j]) / p.scale[j];
      }
      score = sigmoid(z);
      break;
    }
    case ModelVariant::kTree: {
      const auto& leaf = tree_leaf(model, x);
      score = static_cast<double>(leaf.real_count + 1) /
              static_cast<double>(leaf.real_count + leaf.false_count + 2);
      break;
    }
  }
  return {score >= 0.5 ? Label::kReal : Label::kFalse, score};
}

double logistic_loss(const Model& model, const FeatureMatrix& data, double l2) {
  const auto s = standardize(data, model.logistic);
  return loss_of(s, data.cols, model.logistic.weights, model.logistic.bias, l2);
}

double info_gain(const FeatureMatrix& data, std::size_t feature, int bins) {
  if (bins < 2) throw ArgumentError("info gain needs at least two bins");
  if (data.rows() == 0) throw ArgumentError("info gain of an empty dataset");
  if (feature >= data.cols) throw ArgumentError("feature index out of range");
  const std::size_t n = data.rows();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return data.at(a, feature) < data.at(b, feature);
  });

  const auto total = class_counts(data);
  double conditional = 0.0;
  std::array<std::size_t, 2> bin{};
  std::size_t bin_index = 0;
  std::size_t placed = 0;
  const auto close_bin = [&] {
    const std::size_t size = bin[0] + bin[1];
    if (size > 0) {
      conditional += static_cast<double>(size) / static_cast<double>(n) * entropy2(bin[0], bin[1]);
    }
    bin = {};
  };
  for (std::size_t i = 0; i < n;) {
    // Equal values always share a bin.
    std::size_t j = i;
    while (j < n && data.at(order[j], feature) == data.at(order[i], feature)) {
      ++bin[static_cast<std::size_t>(cls(data.labels[order[j]]))];
      ++j;
    }
    placed = j;
    if (placed * static_cast<std::size_t>(bins) >= (bin_index + 1) * n) {
      close_bin();
      ++bin_index;
    }
    i = j;
  }
  close_bin();
  const double gain = entropy2(total[0], total[1]) - conditional;
  return std::max(gain, 0.0);
}

std::vector<std::pair<std::string, double>> rank_features(const Dataset& ds, int bins) {
  const auto m = to_matrix(ds);
  std::vector<std::pair<std::string, double>> out;
  for (std::size_t f = 0; f < kFeatureCount; ++f) {
    out.emplace_back(kFeatureNames[f], info_gain(m, f, bins));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  return out;
}

CrossValidation cross_validate(const FeatureMatrix& data, const TrainConfig& cfg,
                               ModelVariant variant, int k, std::uint64_t seed,
                               unsigned workers) {
  if (k < 2) throw ArgumentError("cross-validation needs at least two folds");
  cfg.validate();
  std::array<std::vector<std::size_t>, 2> by_class;
  for (std::size_t i = 0; i < data.rows(); ++i) {
    by_class[static_cast<std::size_t>(cls(data.labels[i]))].push_back(i);
  }
  for (const auto& members : by_class) {
    if (members.size() < static_cast<std::size_t>(k)) {
      throw ArgumentError("each class needs at least " + std::to_string(k) +
                          " instances for " + std::to_string(k) + "-fold cross-validation");
    }
  }
  Rng rng(seed);
  std::vector<std::vector<std::size_t>> folds(static_cast<std::size_t>(k));
  for (auto& members : by_class) {
    rng.shuffle(members);
    for (std::size_t i = 0; i < members.size(); ++i) {
      folds[i % static_cast<std::size_t>(k)].push_back(members[i]);
    }
  }
  for (auto& fold : folds) std::sort(fold.begin(), fold.end());

  std::vector<std::size_t> fold_of(data.rows());
  for (std::size_t f = 0; f < folds.size(); ++f) {
    for (std::size_t r : folds[f]) fold_of[r] = f;
  }
  std::vector<std::vector<double>> fold_scores(folds.size());
  parallel_for(folds.size(), workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t f = begin; f < end; ++f) {
      FeatureMatrix train_set;
      train_set.cols = data.cols;
      for (std::size_t r = 0; r < data.rows(); ++r) {
        if (fold_of[r] != f) train_set.add_row(data.row(r), data.labels[r]);
      }
      const Model model = train(train_set, cfg, variant);
      for (std::size_t r : folds[f]) fold_scores[f].push_back(predict(model, data.row(r)).score);
    }
  });

  CrossValidation cv;
  for (std::size_t f = 0; f < folds.size(); ++f) {
    for (std::size_t i = 0; i < folds[f].size(); ++i) {
      cv.rows.push_back(folds[f][i]);
      cv.scores.push_back(fold_scores[f][i]);
      cv.labels.push_back(data.labels[folds[f][i]]);
    }
  }
  cv.report = build_report(cv.scores, cv.labels);
  return cv;
}

void save_model(const Model& model, std::ostream& out) {
  nlohmann::ordered_json j;
  j["variant"] = variant_name(model.variant);
  j["dim"] = model.dim;
  switch (model.variant) {
    case ModelVariant::kGaussianNb:
      j["log_prior"] = model.nb.log_prior;
      j["mean"] = model.nb.mean;
      j["variance"] = model.nb.variance;
      break;
    case ModelVariant::kLogistic:
      j["weights"] = model.logistic.weights;
      j["bias"] = model.logistic.bias;
      j["center"] = model.logistic.center;
      j["scale"] = model.logistic.scale;
      j["rate_halvings"] = model.logistic.rate_halvings;
      break;
    case ModelVariant::kTree: {
      auto nodes = nlohmann::ordered_json::array();
      for (const auto& n : model.tree) {
        nodes.push_back({{"feature", n.feature},
                         {"threshold", n.threshold},
                         {"left", n.left},
                         {"right", n.right},
                         {"real", n.real_count},
                         {"false", n.false_count}});
      }
      j["nodes"] = nodes;
      break;
    }
  }
  out << j.dump(2) << '\n';
}

Model load_model(std::istream& in) {
  try {
    const auto j = nlohmann::json::parse(in);
    Model m;
    m.variant = parse_variant(j.at("variant").get<std::string>());
    m.dim = j.at("dim").get<std::size_t>();
    switch (m.variant) {
      case ModelVariant::kGaussianNb:
        m.nb.log_prior = j.at("log_prior").get<std::array<double, 2>>();
        m.nb.mean = j.at("mean").get<std::array<std::vector<double>, 2>>();
        m.nb.variance = j.at("variance").get<std::array<std::vector<double>, 2>>();
        for (int c = 0; c < 2; ++c) {
          if (m.nb.mean[c].size() != m.dim || m.nb.variance[c].size() != m.dim) {
            throw ParseError("model parameters do not match dim");
          }
        }
        break;
      case ModelVariant::kLogistic:
        m.logistic.weights = j.at("weights").get<std::vector<double>>();
        m.logistic.bias = j.at("bias").get<double>();
        m.logistic.center = j.at("center").get<std::vector<double>>();
        m.logistic.scale = j.at("scale").get<std::vector<double>>();
        m.logistic.rate_halvings = j.value("rate_halvings", 0);
        if (m.logistic.weights.size() != m.dim || m.logistic.center.size() != m.dim ||
            m.logistic.scale.size() != m.dim) {
          throw ParseError("model parameters do not match dim");
        }
        break;
      case ModelVariant::kTree:
        for (const auto& n : j.at("nodes")) {
          TreeNode node;
          node.feature = n.at("feature").get<int>();
          node.threshold = n.at("threshold").get<double>();
          node.left = n.at("left").get<int>();
          node.right = n.at("right").get<int>();
          node.real_count = n.at("real").get<std::size_t>();
          node.false_count = n.at("false").get<std::size_t>();
          m.tree.push_back(node);
        }
        if (m.tree.empty()) throw ParseError("tree model has no nodes");
        for (int i = 0; i < static_cast<int>(m.tree.size()); ++i) {
          const auto& node = m.tree[static_cast<std::size_t>(i)];
          if (node.is_leaf()) continue;
          const auto size = static_cast<int>(m.tree.size());
          // Children always follow their parent, which also rules out cycles.
          if (node.left <= i || node.right <= i || node.left >= size || node.right >= size ||
              static_cast<std::size_t>(node.feature) >= m.dim) {
            throw ParseError("tree model has an invalid node");
          }
        }
        break;
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("model JSON: ") + e.what());
  } catch (const ArgumentError& e) {
    throw ParseError(std::string("model JSON: ") + e.what());
  }
}

}  // namespace linkrank
