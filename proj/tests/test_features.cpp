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
#include <sstream>

#include "linkrank/error.hpp"
#include "linkrank/features.hpp"
#include "oracles.hpp"

namespace linkrank {
namespace {

double jac(const Snapshot& s, VertexId a, VertexId b) { return jaccard(s, s.vertex(a), s.vertex(b)); }

TEST(Jaccard, IdenticalNeighborhoods) {
  const auto s = oracle::snapshot_of({{1, 3}, {2, 3}});
  EXPECT_EQ(jac(s, 1, 2), 1.0);
}

TEST(Jaccard, DisjointNeighborhoods) {
  const auto s = oracle::snapshot_of({{1, 3}, {2, 4}});
  EXPECT_EQ(jac(s, 1, 2), 0.0);
}

TEST(Jaccard, WorkedExample) {
  const auto s = oracle::snapshot_of({{1, 2}, {1, 3}, {2, 3}, {2, 4}});
  EXPECT_DOUBLE_EQ(jac(s, 3, 4), 0.5);
}

TEST(Jaccard, SelfAndIsolated) {
  const auto s = oracle::snapshot_of({{1, 2}}, {7, 8});
  EXPECT_EQ(jac(s, 1, 1), 1.0);
  EXPECT_EQ(jac(s, 7, 7), 0.0);
  EXPECT_EQ(jac(s, 7, 8), 0.0);
  EXPECT_THROW(jaccard(s, 1, 99), LookupError);
}

TEST(DegreeCoeff, PathAndEdgeless) {
  const auto s = oracle::snapshot_of({{1, 2}, {2, 3}});
  EXPECT_EQ(degree_coeff(s, s.vertex(2)), 1.0);
  EXPECT_EQ(degree_coeff(s, s.vertex(1)), 0.5);
  const auto e = oracle::snapshot_of({}, {1, 2});
  EXPECT_EQ(degree_coeff(e, e.vertex(1)), 0.0);
  EXPECT_THROW(degree_coeff(s, 3), LookupError);
}

TEST(Transitivity, Examples) {
  const auto tri = oracle::snapshot_of({{1, 2}, {2, 3}, {1, 3}});
  EXPECT_EQ(transitivity_coeff(tri, tri.vertex(1)), 1.0);
  const auto star = oracle::snapshot_of({{1, 2}, {1, 3}, {1, 4}});
  EXPECT_EQ(transitivity_coeff(star, star.vertex(1)), 0.0);
  EXPECT_EQ(transitivity_coeff(star, star.vertex(2)), 0.0);
  const auto s = oracle::snapshot_of({{1, 2}, {1, 3}, {1, 4}, {2, 3}});
  EXPECT_DOUBLE_EQ(transitivity_coeff(s, s.vertex(1)), 1.0 / 3.0);
  EXPECT_THROW(transitivity_coeff(s, 9), LookupError);
}

TEST(Hits, RegularGraphIsUniform) {
  // 6-cycle plus chords making it 3-regular.
  const auto s = oracle::snapshot_of({{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}, {0, 3}, {1, 4}, {2, 5}});
  const auto h = hits(s);
  for (double a : h.authority) EXPECT_NEAR(a, 1 / std::sqrt(6.0), 1e-12);
}

TEST(Hits, PathMatchesEigenvector) {
  const auto s = oracle::snapshot_of({{1, 2}, {2, 3}});
  const auto h = hits(s);
  const auto ref = oracle::principal_eigenvector(oracle::adjacency({{1, 2}, {2, 3}}));
  ASSERT_EQ(h.authority.size(), 3u);
  EXPECT_NEAR(h.authority[0], 0.5, 1e-9);
  EXPECT_NEAR(h.authority[1], std::sqrt(0.5), 1e-9);
  EXPECT_NEAR(h.authority[2], 0.5, 1e-9);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(h.authority[i], ref[i], 1e-9);
    EXPECT_EQ(h.authority[i], h.hub[i]);
  }
}

TEST(Hits, IsolatedVertexScoresZero) {
  const auto s = oracle::snapshot_of({{1, 2}, {2, 3}, {1, 3}}, {50});
  const auto h = hits(s);
  EXPECT_EQ(h.authority[s.vertex(50)], 0.0);
}

TEST(Hits, EdgelessGraph) {
  const auto h = hits(oracle::snapshot_of({}, {1, 2, 3}));
  for (double a : h.authority) EXPECT_EQ(a, 0.0);
  EXPECT_EQ(h.iterations, 0);
}

TEST(Hits, RejectsBadOptions) {
  const auto s = oracle::snapshot_of({{1, 2}});
  EXPECT_THROW(hits(s, {0.0, 10}), ArgumentError);
  EXPECT_THROW(hits(s, {-1.0, 10}), ArgumentError);
  EXPECT_THROW(hits(s, {1e-6, 0}), ArgumentError);
}

TEST(Hits, RecordsIterationBudget) {
  const auto s = oracle::snapshot_of(oracle::random_graph(40, 0.2, 3));
  const auto h = hits(s, {1e-300, 7});
  EXPECT_EQ(h.iterations, 7);
  EXPECT_GT(h.residual, 0.0);
}

TEST(GlobalFeatures, Triangle) {
  const auto s = oracle::snapshot_of({{1, 2}, {2, 3}, {1, 3}});
  const auto t = compute_global_features(s);
  for (const auto& row : t.rows) {
    EXPECT_NEAR(row.authority, 1 / std::sqrt(3.0), 1e-12);
    EXPECT_EQ(row.degree_norm, 1.0);
    EXPECT_EQ(row.transitivity, 1.0);
  }
}

TEST(GlobalFeatures, Edgeless) {
  const auto t = compute_global_features(oracle::snapshot_of({}, {1, 2}));
  for (const auto& row : t.rows) EXPECT_EQ(row, VertexFeatures{});
}

TEST(GlobalFeatures, MatchesSequentialOracleAndWorkerCount) {
  const auto edges = oracle::random_graph(200, 0.05, 11, 7);
  const auto s = oracle::snapshot_of(edges);
  const auto adj = oracle::adjacency(edges);
  const auto one = compute_global_features(s, {}, 1);
  const auto many = compute_global_features(s, {}, 5);
  EXPECT_EQ(one.rows, many.rows);
  EXPECT_EQ(one.hits_iterations, many.hits_iterations);
  double sq = 0;
  for (Vertex v = 0; v < s.vertex_count(); ++v) {
    const auto id = s.id(v);
    EXPECT_EQ(one[v].degree_norm, oracle::degree_coeff(adj, id));
    EXPECT_NEAR(one[v].transitivity, oracle::transitivity(adj, id), 1e-15);
    EXPECT_NEAR(one[v].authority, one[v].hub, 1e-9);
    sq += one[v].authority * one[v].authority;
  }
  EXPECT_NEAR(sq, 1.0, 1e-12);
}

TEST(GlobalFeatures, LeakageGuard) {
  const auto a = oracle::snapshot_of({{1, 2}, {2, 3}});
  const auto b = oracle::snapshot_of({{1, 2}, {2, 3}, {1, 3}});
  const auto t = compute_global_features(a);
  EXPECT_NO_THROW(require_features_match(t, a));
  EXPECT_THROW(require_features_match(t, b), InvariantError);
}

TEST(FeatureCsv, HeaderAndExternalIds) {
  const auto s = oracle::snapshot_of({{10, 20}, {20, 30}});
  std::ostringstream out;
  write_feature_csv(compute_global_features(s), s, out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "vertex,authority,degree_norm,transitivity");
  std::getline(in, line);
  EXPECT_EQ(line.substr(0, 3), "10,");
  std::getline(in, line);
  EXPECT_EQ(line, "20,0.7071067811865476,1,0");
}

TEST(Histogram, AllEqualValues) {
  const std::vector<double> v(5, 0.3);
  const auto h = histogram(v, 4);
  ASSERT_EQ(h.size(), 4u);
  EXPECT_EQ(h[0].count, 5u);
  for (std::size_t b = 1; b < 4; ++b) EXPECT_EQ(h[b].count, 0u);
}

TEST(Histogram, TwoValuesTwoBins) {
  const auto h = histogram(std::vector<double>{0.0, 1.0}, 2);
  ASSERT_EQ(h.size(), 2u);
  EXPECT_EQ(h[0].count, 1u);
  EXPECT_EQ(h[1].count, 1u);
  EXPECT_EQ(h[1].lower, 0.5);
}

TEST(Histogram, UniformGrid) {
  std::vector<double> v;
  for (int i = 0; i < 100; ++i) v.push_back(i / 99.0);
  const auto h = histogram(v, 10);
  for (const auto& b : h) EXPECT_EQ(b.count, 10u);
}

TEST(Histogram, EmptyAndInvalid) {
  EXPECT_TRUE(histogram(std::vector<double>{}, 3).empty());
  EXPECT_THROW(histogram(std::vector<double>{1.0}, 0), ArgumentError);
}

TEST(Histogram, Log1pTransformAndFeatureColumn) {
  const auto h = histogram(std::vector<double>{0.0, std::exp(1.0) - 1}, 2, HistogramTransform::kLog1p);
  EXPECT_NEAR(h[1].lower, 0.5, 1e-15);
  const auto s = oracle::snapshot_of(oracle::random_graph(50, 0.1, 2));
  const auto t = compute_global_features(s);
  std::size_t total = 0;
  for (const auto& b : feature_histogram(t, FeatureColumn::kTransitivity, 7)) total += b.count;
  EXPECT_EQ(total, s.vertex_count());
  EXPECT_EQ(parse_feature_column("degree_norm"), FeatureColumn::kDegreeNorm);
  EXPECT_THROW(parse_feature_column("pagerank"), ArgumentError);
  EXPECT_THROW(parse_histogram_transform("sqrt"), ArgumentError);
}

class FeatureProperties : public ::testing::TestWithParam<int> {};

TEST_P(FeatureProperties, SymmetricBoundedAndOracleExact) {
  const auto edges = oracle::random_graph(50, 0.1 + 0.05 * GetParam(), GetParam());
  const auto s = oracle::snapshot_of(edges);
  const auto adj = oracle::adjacency(edges);
  for (Vertex a = 0; a < s.vertex_count(); ++a) {
    EXPECT_GE(transitivity_coeff(s, a), 0.0);
    EXPECT_LE(transitivity_coeff(s, a), 1.0);
    for (Vertex b = 0; b < s.vertex_count(); ++b) {
      const double j = jaccard(s, a, b);
      EXPECT_EQ(j, jaccard(s, b, a));
      EXPECT_GE(j, 0.0);
      EXPECT_LE(j, 1.0);
      if (adj.count(s.id(a)) && adj.count(s.id(b))) {
        EXPECT_NEAR(j, oracle::jaccard(adj, s.id(a), s.id(b)), 1e-12);
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, FeatureProperties, ::testing::Range(1, 5));

}  // namespace
}  // namespace linkrank
