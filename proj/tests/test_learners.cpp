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

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "linkrank/error.hpp"
#include "linkrank/learners.hpp"
#include "oracles.hpp"

namespace linkrank {
namespace {

constexpr Label R = Label::kReal;
constexpr Label F = Label::kFalse;

FeatureMatrix matrix(std::size_t cols, const std::vector<std::vector<double>>& rows,
                     const std::vector<Label>& labels) {
  FeatureMatrix m;
  m.cols = cols;
  for (std::size_t i = 0; i < rows.size(); ++i) m.add_row(rows[i], labels[i]);
  return m;
}

double accuracy(const Model& model, const FeatureMatrix& m) {
  std::size_t ok = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) ok += predict(model, m.row(i)).label == m.labels[i];
  return static_cast<double>(ok) / static_cast<double>(m.rows());
}

Dataset dataset_of(const FeatureMatrix& m) {
  Dataset ds;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    LabeledInstance x;
    x.u = i;
    x.v = i + 100000;
    std::copy(m.row(i).begin(), m.row(i).end(), x.features.begin());
    x.label = m.labels[i];
    ds.instances.push_back(x);
  }
  return ds;
}

// Six-column data whose label is driven by column `signal`.
FeatureMatrix planted(std::size_t n, std::size_t signal, std::uint64_t seed, double noise = 0.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  FeatureMatrix m;
  m.cols = kFeatureCount;
  for (std::size_t i = 0; i < n; ++i) {
    std::array<double, kFeatureCount> x{};
    for (auto& v : x) v = unit(rng);
    Label l = x[signal] > 0.6 ? R : F;
    if (unit(rng) < noise) l = other(l);
    m.add_row(x, l);
  }
  return m;
}

const ModelVariant kAll[] = {ModelVariant::kGaussianNb, ModelVariant::kLogistic, ModelVariant::kTree};

TEST(Train, SeparableOneFeature) {
  const auto m = matrix(1, {{1}, {1}, {1}, {-1}, {-1}, {-1}}, {R, R, R, F, F, F});
  for (auto v : kAll) EXPECT_EQ(accuracy(train(m, {}, v), m), 1.0) << variant_name(v);
}

TEST(Train, SingleClassFails) {
  const auto m = matrix(1, {{1}, {2}, {3}}, {R, R, R});
  EXPECT_THROW(train(m, {}, ModelVariant::kGaussianNb), TrainingError);
  EXPECT_THROW(train(m, {}, ModelVariant::kLogistic), TrainingError);
  EXPECT_THROW(train(m, {}, ModelVariant::kTree), TrainingError);
  const auto one_each = matrix(1, {{1}, {2}}, {R, F});
  EXPECT_NO_THROW(train(one_each, {}, ModelVariant::kTree));
  EXPECT_THROW(train(one_each, {}, ModelVariant::kLogistic), TrainingError);
}

TEST(Train, InvalidConfig) {
  const auto m = matrix(1, {{1}, {1}, {-1}, {-1}}, {R, R, F, F});
  TrainConfig cfg;
  cfg.tree.min_leaf = 0;
  EXPECT_THROW(train(m, cfg, ModelVariant::kTree), ArgumentError);
  cfg = {};
  cfg.logistic.learning_rate = 0;
  EXPECT_THROW(train(m, cfg, ModelVariant::kLogistic), ArgumentError);
  cfg = {};
  cfg.nb.variance_floor = -1;
  EXPECT_THROW(train(m, cfg, ModelVariant::kGaussianNb), ArgumentError);
}

TEST(Tree, DepthOneSplitBetweenNeighbours) {
  // label = (feature 2 > 0.5); closest values on either side are 0.42 and 0.61.
  std::vector<std::vector<double>> rows;
  std::vector<Label> labels;
  for (double v : {0.1, 0.2, 0.3, 0.42, 0.61, 0.7, 0.8, 0.95}) {
    rows.push_back({0.5, v * 3, v, 1.0 - v * v});
    labels.push_back(v > 0.5 ? R : F);
  }
  // Columns 1 and 3 are monotone in v as well; make them useless by shuffling.
  std::swap(rows[0][1], rows[7][1]);
  std::swap(rows[1][3], rows[6][3]);
  std::swap(rows[2][1], rows[5][1]);
  std::swap(rows[3][3], rows[4][3]);
  TrainConfig cfg;
  cfg.tree.min_leaf = 1;
  const auto model = train(matrix(4, rows, labels), cfg, ModelVariant::kTree);
  ASSERT_EQ(model.tree_depth(), 1);
  EXPECT_EQ(model.tree[0].feature, 2);
  EXPECT_GT(model.tree[0].threshold, 0.42);
  EXPECT_LT(model.tree[0].threshold, 0.61);
}

TEST(Tree, ThresholdsStrictlyBetweenObservedValues) {
  const auto m = planted(300, 1, 5, 0.1);
  TrainConfig cfg;
  cfg.tree.prune = false;
  const auto model = train(m, cfg, ModelVariant::kTree);
  for (const auto& node : model.tree) {
    if (node.is_leaf()) continue;
    bool below = false, above = false;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      const double v = m.at(i, static_cast<std::size_t>(node.feature));
      EXPECT_NE(v, node.threshold);
      below |= v < node.threshold;
      above |= v > node.threshold;
    }
    EXPECT_TRUE(below && above);
  }
}

TEST(Tree, LaplaceLeafScore) {
  const auto m = matrix(1, {{0}, {0}, {0}, {0}}, {R, R, R, F});
  const auto model = train(m, {}, ModelVariant::kTree);
  ASSERT_EQ(model.tree_size(), 1u);
  EXPECT_NEAR(predict(model, std::vector<double>{0.0}).score, 4.0 / 6.0, 1e-12);
}

TEST(Tree, RespectsMinLeafAndDepth) {
  const auto m = planted(400, 0, 9, 0.2);
  TrainConfig cfg;
  cfg.tree.prune = false;
  cfg.tree.min_leaf = 10;
  cfg.tree.max_depth = 3;
  const auto model = train(m, cfg, ModelVariant::kTree);
  EXPECT_LE(model.tree_depth(), 3);
  for (const auto& node : model.tree) {
    EXPECT_GE(node.real_count + node.false_count, 10u);
  }
}

TEST(Tree, PruningNeverGrowsTheTree) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto m = planted(300, 2, seed, 0.25);
    TrainConfig pruned, full;
    full.tree.prune = false;
    const auto a = train(m, pruned, ModelVariant::kTree);
    const auto b = train(m, full, ModelVariant::kTree);
    EXPECT_LE(a.tree_size(), b.tree_size());
  }
}

TEST(Tree, BeatsLogisticOnXor) {
  std::vector<std::vector<double>> rows;
  std::vector<Label> labels;
  for (int rep = 0; rep < 5; ++rep) {
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        rows.push_back({static_cast<double>(a), static_cast<double>(b)});
        labels.push_back(a != b ? R : F);
      }
    }
  }
  const auto m = matrix(2, rows, labels);
  TrainConfig cfg;
  cfg.tree.max_depth = 2;
  cfg.tree.min_leaf = 1;
  cfg.tree.prune = false;
  EXPECT_EQ(accuracy(train(m, cfg, ModelVariant::kTree), m), 1.0);
  EXPECT_LE(accuracy(train(m, cfg, ModelVariant::kLogistic), m), 0.75);
}

TEST(NaiveBayes, IdenticalClassesScoreHalf) {
  const auto m = matrix(2, {{1, 5}, {3, 7}, {1, 5}, {3, 7}}, {R, R, F, F});
  const auto model = train(m, {}, ModelVariant::kGaussianNb);
  EXPECT_NEAR(predict(model, std::vector<double>{2.0, 6.0}).score, 0.5, 1e-12);
  EXPECT_NEAR(predict(model, std::vector<double>{9.0, -4.0}).score, 0.5, 1e-12);
}

TEST(NaiveBayes, PosteriorsSumToOneAndVarianceFloored) {
  const auto m = planted(200, 3, 2, 0.1);
  auto with_constant = m;
  for (std::size_t i = 0; i < with_constant.rows(); ++i) with_constant.values[i * 6 + 4] = 1.0;
  const auto model = train(with_constant, {}, ModelVariant::kGaussianNb);
  for (int c = 0; c < 2; ++c) {
    for (double v : model.nb.variance[c]) EXPECT_GE(v, 1e-9);
  }
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const auto p = nb_posteriors(model, with_constant.row(i));
    EXPECT_NEAR(p[0] + p[1], 1.0, 1e-12);
  }
}

TEST(Logistic, ZeroEpochsScoresHalf) {
  TrainConfig cfg;
  cfg.logistic.epochs = 0;
  const auto model = train(planted(50, 0, 1), cfg, ModelVariant::kLogistic);
  for (double w : model.logistic.weights) EXPECT_EQ(w, 0.0);
  EXPECT_EQ(predict(model, std::vector<double>(6, 0.3)).score, 0.5);
}

TEST(Logistic, LossNonIncreasing) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto m = planted(150, seed % 6, seed, 0.15);
    for (double rate : {0.1, 5.0, 50.0}) {
      TrainConfig cfg;
      cfg.logistic.learning_rate = rate;
      const auto model = train(m, cfg, ModelVariant::kLogistic);
      const auto& h = model.logistic.loss_history;
      ASSERT_EQ(h.size(), 201u);
      for (std::size_t i = 1; i < h.size(); ++i) EXPECT_LE(h[i], h[i - 1]) << "rate " << rate;
      EXPECT_NEAR(logistic_loss(model, m, cfg.logistic.l2), h.back(), 1e-12);
      if (rate == 50.0) EXPECT_GT(model.logistic.rate_halvings, 0);
    }
  }
}

TEST(Predict, DimensionMismatch) {
  const auto model = train(planted(40, 0, 3), {}, ModelVariant::kTree);
  EXPECT_THROW(predict(model, std::vector<double>(5, 0.0)), ArgumentError);
}

TEST(Predict, LabelFollowsScore) {
  const auto m = planted(200, 4, 8, 0.2);
  for (auto v : kAll) {
    const auto model = train(m, {}, v);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      const auto p = predict(model, m.row(i));
      EXPECT_EQ(p.label == R, p.score >= 0.5);
      EXPECT_GE(p.score, 0.0);
      EXPECT_LE(p.score, 1.0);
    }
  }
}

TEST(InfoGain, Examples) {
  const auto constant = matrix(1, {{2}, {2}, {2}, {2}}, {R, F, R, F});
  EXPECT_EQ(info_gain(constant, 0, 4), 0.0);
  const auto separable = matrix(1, {{0.1}, {0.2}, {0.8}, {0.9}}, {F, F, R, R});
  EXPECT_NEAR(info_gain(separable, 0, 2), 1.0, 1e-12);
  const auto mixed = matrix(1, {{0.1}, {0.8}, {0.2}, {0.9}}, {R, R, F, F});
  EXPECT_NEAR(info_gain(mixed, 0, 2), 0.0, 1e-12);
  EXPECT_THROW(info_gain(mixed, 0, 1), ArgumentError);
  EXPECT_THROW(info_gain(FeatureMatrix{1, {}, {}}, 0, 2), ArgumentError);
}

TEST(InfoGain, MatchesEntropyOracle) {
  // Ten distinct values per label pattern: with 5 bins each holds two rows.
  std::vector<std::vector<double>> rows;
  const std::vector<Label> labels = {R, R, R, F, F, R, F, F, F, R};
  for (int i = 0; i < 10; ++i) rows.push_back({static_cast<double>(i)});
  const auto m = matrix(1, rows, labels);
  double expected = oracle::entropy(5, 5);
  for (int b = 0; b < 5; ++b) {
    const std::size_t r = (labels[2 * b] == R) + (labels[2 * b + 1] == R);
    expected -= 0.2 * oracle::entropy(r, 2 - r);
  }
  EXPECT_NEAR(info_gain(m, 0, 5), expected, 1e-12);
}

TEST(InfoGain, BoundedByLabelEntropy) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto m = planted(120, seed % 6, seed, 0.3);
    std::size_t reals = 0;
    for (auto l : m.labels) reals += l == R;
    for (std::size_t f = 0; f < 6; ++f) {
      const double g = info_gain(m, f, 10);
      EXPECT_GE(g, 0.0);
      EXPECT_LE(g, oracle::entropy(reals, m.rows() - reals) + 1e-12);
    }
  }
}

TEST(RankFeatures, PlantedColumnFirstAndConstantTies) {
  const auto ranked = rank_features(dataset_of(planted(400, 1, 4)), 10);
  EXPECT_EQ(ranked[0].first, "authority2");
  Dataset flat;
  for (int i = 0; i < 6; ++i) {
    LabeledInstance x;
    x.u = i;
    x.v = i + 10;
    x.label = i % 2 ? R : F;
    flat.instances.push_back(x);
  }
  const auto ties = rank_features(flat, 10);
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    EXPECT_EQ(ties[i].first, kFeatureNames[i]);
    EXPECT_EQ(ties[i].second, 0.0);
  }
}

TEST(CrossValidate, SeparableDataScoresOne) {
  auto m = planted(200, 0, 6);
  // Open a margin around the boundary.
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double& x = m.values[i * kFeatureCount];
    x = m.labels[i] == R ? 0.8 + x / 5 : x / 2;
  }
  for (auto v : kAll) {
    if (v == ModelVariant::kGaussianNb) continue;  // a threshold is not Gaussian-separable
    EXPECT_NEAR(cross_validate(m, {}, v, 5, 1).report.weighted.f_measure, 1.0, 1e-12)
        << variant_name(v);
  }
  const auto wide = matrix(1, {{-3}, {-2.5}, {-2}, {-3.5}, {-2.2}, {2}, {3}, {2.5}, {3.5}, {2.2}},
                           {F, F, F, F, F, R, R, R, R, R});
  EXPECT_EQ(cross_validate(wide, {}, ModelVariant::kGaussianNb, 5, 1).report.weighted.f_measure, 1.0);
}

TEST(CrossValidate, RandomLabelsNearChance) {
  std::mt19937_64 rng(12);
  FeatureMatrix m = planted(1000, 0, 13);
  for (auto& l : m.labels) l = rng() % 2 ? R : F;
  for (auto v : kAll) {
    const double roc = cross_validate(m, {}, v, 5, 3).report.real.roc_area;
    EXPECT_NEAR(roc, 0.5, 0.05) << variant_name(v);
  }
}

TEST(CrossValidate, DeterministicAcrossRunsAndWorkers) {
  const auto m = planted(300, 2, 14, 0.2);
  for (auto v : kAll) {
    const auto a = cross_validate(m, {}, v, 5, 99, 1);
    const auto b = cross_validate(m, {}, v, 5, 99, 4);
    EXPECT_EQ(a.scores, b.scores);
    EXPECT_EQ(a.rows, b.rows);
    std::ostringstream ra, rb;
    write_report_csv(a.report, ra);
    write_report_csv(b.report, rb);
    EXPECT_EQ(ra.str(), rb.str());
  }
}

TEST(CrossValidate, StratifiedFoldsCoverEveryRowOnce) {
  const auto m = planted(103, 5, 15, 0.1);
  const auto cv = cross_validate(m, {}, ModelVariant::kTree, 5, 2);
  auto rows = cv.rows;
  std::sort(rows.begin(), rows.end());
  for (std::size_t i = 0; i < rows.size(); ++i) EXPECT_EQ(rows[i], i);
}

TEST(CrossValidate, SmallClassRejected) {
  const auto m = matrix(1, {{1}, {2}, {3}, {4}, {5}, {6}, {7}}, {R, R, R, R, F, F, F});
  EXPECT_THROW(cross_validate(m, {}, ModelVariant::kTree, 5, 1), ArgumentError);
  EXPECT_THROW(cross_validate(m, {}, ModelVariant::kTree, 1, 1), ArgumentError);
}

TEST(ModelJson, RoundTripPreservesPredictions) {
  const auto m = planted(250, 3, 16, 0.15);
  for (auto v : kAll) {
    const auto model = train(m, {}, v);
    std::stringstream io;
    save_model(model, io);
    const auto loaded = load_model(io);
    EXPECT_EQ(loaded.variant, v);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      EXPECT_EQ(predict(loaded, m.row(i)).score, predict(model, m.row(i)).score);
    }
  }
}

TEST(ModelJson, RejectsGarbage) {
  std::istringstream bad("{\"variant\": \"svm\"}");
  EXPECT_THROW(load_model(bad), ParseError);
  std::istringstream not_json("not json");
  EXPECT_THROW(load_model(not_json), ParseError);
}

TEST(Variants, ParseNames) {
  EXPECT_EQ(parse_variant("j48"), ModelVariant::kTree);
  EXPECT_EQ(parse_variant("bayes"), ModelVariant::kGaussianNb);
  EXPECT_EQ(parse_variant("logistic"), ModelVariant::kLogistic);
  EXPECT_THROW(parse_variant("svm"), ArgumentError);
}

}  // namespace
}  // namespace linkrank
