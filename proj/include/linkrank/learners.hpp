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

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "linkrank/dataset.hpp"
#include "linkrank/label.hpp"
#include "linkrank/metrics.hpp"

namespace linkrank {

// Dense row-major design matrix with one label per row.
struct FeatureMatrix {
  std::size_t cols = 0;
  std::vector<double> values;
  std::vector<Label> labels;

  std::size_t rows() const { return labels.size(); }
  std::span<const double> row(std::size_t i) const {
    return {values.data() + i * cols, cols};
  }
  double at(std::size_t i, std::size_t j) const { return values[i * cols + j]; }
  void add_row(std::span<const double> x, Label label);
};

FeatureMatrix to_matrix(const Dataset& ds);

enum class ModelVariant { kGaussianNb, kLogistic, kTree };

ModelVariant parse_variant(std::string_view name);  // nb | logistic | tree
std::string variant_name(ModelVariant v);

struct TreeConfig {
  std::size_t min_leaf = 2;
  std::optional<int> max_depth;  // unlimited when empty
  double pruning_confidence = 0.25;
  bool prune = true;
};

struct LogisticConfig {
  double learning_rate = 0.1;
  int epochs = 200;
  double l2 = 1e-4;
};

struct NaiveBayesConfig {
  double variance_floor = 1e-9;
};

struct TrainConfig {
  TreeConfig tree;
  LogisticConfig logistic;
  NaiveBayesConfig nb;
  std::uint64_t seed = 0;

  void validate() const;
};

struct GaussianNbParams {
  // Index 0 is class false, 1 is class real.
  std::array<double, 2> log_prior{};
  std::array<std::vector<double>, 2> mean;
  std::array<std::vector<double>, 2> variance;
};

struct LogisticParams {
  std::vector<double> weights;
  double bias = 0.0;
  std::vector<double> center;  // standardization
  std::vector<double> scale;
  int rate_halvings = 0;
  std::vector<double> loss_history;  // per epoch, not serialized
};

struct TreeNode {
  int feature = -1;  // -1 for leaves
  double threshold = 0.0;  // x <= threshold goes left
  int left = -1;
  int right = -1;
  std::size_t real_count = 0;
  std::size_t false_count = 0;

  bool is_leaf() const { return feature < 0; }
};

struct Model {
  ModelVariant variant = ModelVariant::kGaussianNb;
  std::size_t dim = 0;
  GaussianNbParams nb;
  LogisticParams logistic;
  std::vector<TreeNode> tree;  // root at index 0

  std::size_t tree_size() const;   // reachable nodes
  int tree_depth() const;
};

struct Prediction {
  Label label = Label::kFalse;
  double score = 0.5;  // probability of class real
};

Model train(const FeatureMatrix& data, const TrainConfig& cfg, ModelVariant variant);
Prediction predict(const Model& model, std::span<const double> x);

// Gaussian naive Bayes posteriors (false, real), each in [0, 1].
std::array<double, 2> nb_posteriors(const Model& model, std::span<const double> x);

// Mean log loss plus the L2 term, on standardized inputs.
double logistic_loss(const Model& model, const FeatureMatrix& data, double l2);

// Label entropy reduction (bits) after equal-frequency binning of one column.
double info_gain(const FeatureMatrix& data, std::size_t feature, int bins);

std::vector<std::pair<std::string, double>> rank_features(const Dataset& ds, int bins);

struct CrossValidation {
  MetricsReport report;
  // Pooled held-out predictions in (fold, row) order.
  std::vector<std::size_t> rows;
  std::vector<double> scores;
  std::vector<Label> labels;
};

// Stratified k-fold split; folds may train concurrently without changing
// the pooled order.
CrossValidation cross_validate(const FeatureMatrix& data, const TrainConfig& cfg,
                               ModelVariant variant, int k, std::uint64_t seed,
                               unsigned workers = 1);

void save_model(const Model& model, std::ostream& out);
Model load_model(std::istream& in);

}  // namespace linkrank
