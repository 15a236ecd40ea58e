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

#include <sstream>

#include "linkrank/error.hpp"
#include "linkrank/ranker.hpp"
#include "oracles.hpp"

namespace linkrank {
namespace {

const oracle::Edges kExample = {{1, 2}, {2, 3}, {1, 3}, {3, 4}, {2, 5}};

std::vector<VertexId> ids(const Snapshot& s, const std::vector<Vertex>& vs) {
  std::vector<VertexId> out;
  for (auto v : vs) out.push_back(s.id(v));
  return out;
}

TEST(Seeds, IsolatedUser) {
  const auto s = oracle::snapshot_of({{1, 2}}, {9});
  EXPECT_TRUE(retrieve_seeds(s, s.vertex(9), 0.0).empty());
}

TEST(Seeds, StrictThreshold) {
  const auto s = oracle::snapshot_of(kExample);
  EXPECT_TRUE(retrieve_seeds(s, s.vertex(1), 1.0 - 1e-9).empty());
  EXPECT_EQ(ids(s, retrieve_seeds(s, s.vertex(1), 0.2)), (std::vector<VertexId>{2, 3}));
  EXPECT_TRUE(retrieve_seeds(s, s.vertex(1), 0.25).empty());
}

TEST(RankCandidates, WorkedExample) {
  const auto s = oracle::snapshot_of(kExample);
  const auto f = compute_global_features(s);
  RankerConfig cfg;
  cfg.th = 0.2;
  const auto u = s.vertex(1);
  const auto seeds = retrieve_seeds(s, u, cfg.th);
  const auto ranked = rank_candidates(s, f, u, seeds, cfg);
  ASSERT_EQ(ranked.size(), 2u);
  EXPECT_EQ(s.id(ranked[0].vertex), 4u);
  EXPECT_EQ(s.id(ranked[1].vertex), 5u);
  EXPECT_EQ(ranked[0].score, ranked[1].score);
  EXPECT_EQ(ranked[0].via_seed_count, 1u);

  cfg.k = 1;
  const auto top = rank_candidates(s, f, u, seeds, cfg);
  ASSERT_EQ(top.size(), 1u);
  EXPECT_EQ(s.id(top[0].vertex), 4u);
  EXPECT_TRUE(rank_candidates(s, f, u, {}, cfg).empty());
}

TEST(RankCandidates, ViaSeedCount) {
  // 1's neighbors 2 and 3 both reach 4.
  const auto s = oracle::snapshot_of({{1, 2}, {1, 3}, {2, 4}, {3, 4}, {2, 3}});
  const auto cands = collect_candidates(s, s.vertex(1), std::vector<Vertex>{s.vertex(2), s.vertex(3)});
  ASSERT_EQ(cands.size(), 1u);
  EXPECT_EQ(s.id(cands[0].vertex), 4u);
  EXPECT_EQ(cands[0].via_seed_count, 2u);
}

TEST(Scoring, ParseAndValidate) {
  EXPECT_EQ(parse_scoring("authority").kind, Scoring::Kind::kAuthority);
  EXPECT_EQ(parse_scoring("transitivity").kind, Scoring::Kind::kTransitivity);
  const auto w = parse_scoring("weighted:1,0.5,0");
  EXPECT_EQ(w.kind, Scoring::Kind::kWeighted);
  EXPECT_EQ(w.score({0.2, 0.2, 0.4, 0.9}), 0.2 + 0.5 * 0.4);
  EXPECT_THROW(parse_scoring("weighted:0,0,0"), ArgumentError);
  EXPECT_THROW(parse_scoring("weighted:-1,1,1"), ArgumentError);
  EXPECT_THROW(parse_scoring("weighted:1,1"), ArgumentError);
  EXPECT_THROW(parse_scoring("pagerank"), ArgumentError);
}

TEST(RankerConfig, Validates) {
  RankerConfig cfg;
  cfg.th = 1.0;
  EXPECT_THROW(cfg.validate(), ArgumentError);
  cfg.th = -0.1;
  EXPECT_THROW(cfg.validate(), ArgumentError);
  cfg.th = 0.5;
  cfg.k = 0;
  EXPECT_THROW(cfg.validate(), ArgumentError);
}

TEST(PredictLinks, EmptyAndIsolated) {
  const auto s = oracle::snapshot_of({{1, 2}}, {9});
  const auto f = compute_global_features(s);
  EXPECT_TRUE(predict_links(s, f, {}, {}).users.empty());
  const std::vector<VertexId> users = {9};
  const auto r = predict_links(s, f, users, {});
  ASSERT_EQ(r.users.size(), 1u);
  EXPECT_TRUE(r.users.at(9).candidates.empty());
}

TEST(PredictLinks, UnknownUsersDoNotAbort) {
  const auto s = oracle::snapshot_of(kExample);
  const auto f = compute_global_features(s);
  const std::vector<VertexId> users = {1, 77, 2};
  const auto r = predict_links(s, f, users, {});
  EXPECT_EQ(r.users.size(), 2u);
  EXPECT_EQ(r.failed, (std::vector<VertexId>{77}));
  EXPECT_EQ(r.errors.size(), 1u);
}

TEST(PredictLinks, MatchesNaiveOracleForAnyWorkerCount) {
  const auto edges = oracle::random_graph(100, 0.08, 5, 3);
  const auto s = oracle::snapshot_of(edges);
  const auto adj = oracle::adjacency(edges);
  const auto f = compute_global_features(s);
  RankerConfig cfg;
  cfg.th = 0.1;
  cfg.k = 10;
  const auto users = s.index().ids();
  const auto one = predict_links(s, f, users, cfg, 1);
  const auto four = predict_links(s, f, users, cfg, 4);
  std::ostringstream a, b;
  write_ranking_csv(one, s, a);
  write_ranking_csv(four, s, b);
  EXPECT_EQ(a.str(), b.str());
  for (const auto& [u, ranking] : one.users) {
    if (!adj.count(u)) continue;
    const auto expected = oracle::rank(adj, u, cfg.th, cfg.k,
                                       [&](VertexId c) { return f[s.vertex(c)].authority; });
    ASSERT_EQ(ranking.candidates.size(), expected.size()) << "user " << u;
    for (std::size_t i = 0; i < expected.size(); ++i) {
      EXPECT_EQ(s.id(ranking.candidates[i].vertex), expected[i].candidate);
      EXPECT_EQ(ranking.candidates[i].via_seed_count, expected[i].via);
    }
  }
}

TEST(RankingCsv, Layout) {
  const auto s = oracle::snapshot_of(kExample);
  const auto f = compute_global_features(s);
  RankerConfig cfg;
  cfg.th = 0.2;
  const std::vector<VertexId> users = {1};
  std::ostringstream out;
  write_ranking_csv(predict_links(s, f, users, cfg), s, out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "user,rank,candidate,score,via_seed_count");
  std::getline(in, line);
  EXPECT_EQ(line.substr(0, 6), "1,1,4,");
  std::getline(in, line);
  EXPECT_EQ(line.substr(0, 6), "1,2,5,");
}

class RankerProperties : public ::testing::TestWithParam<int> {};

TEST_P(RankerProperties, MonotoneInThresholdAndExcludesNeighbors) {
  const auto edges = oracle::random_graph(80, 0.1, GetParam());
  const auto s = oracle::snapshot_of(edges);
  const auto f = compute_global_features(s);
  for (Vertex u = 0; u < s.vertex_count(); ++u) {
    std::vector<Candidate> previous;
    std::vector<Vertex> previous_seeds;
    for (double th : {0.0, 0.1, 0.2, 0.3, 0.5}) {
      const auto seeds = retrieve_seeds(s, u, th);
      const auto cands = collect_candidates(s, u, seeds);
      if (th > 0.0) {
        EXPECT_TRUE(std::includes(previous_seeds.begin(), previous_seeds.end(), seeds.begin(), seeds.end()));
        for (const auto& c : cands) {
          EXPECT_TRUE(std::any_of(previous.begin(), previous.end(),
                                  [&](const Candidate& p) { return p.vertex == c.vertex; }));
        }
      }
      for (const auto& c : cands) {
        EXPECT_NE(c.vertex, u);
        EXPECT_FALSE(s.has_edge(u, c.vertex));
        EXPECT_GE(c.via_seed_count, 1u);
      }
      RankerConfig cfg;
      cfg.th = th;
      cfg.k = 5;
      const auto ranked = rank_candidates(s, f, u, seeds, cfg);
      EXPECT_LE(ranked.size(), 5u);
      for (std::size_t i = 1; i < ranked.size(); ++i) {
        EXPECT_TRUE(ranked[i - 1].score > ranked[i].score ||
                    (ranked[i - 1].score == ranked[i].score && ranked[i - 1].vertex < ranked[i].vertex));
      }
      previous = cands;
      previous_seeds = seeds;
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RankerProperties, ::testing::Range(1, 4));

}  // namespace
}  // namespace linkrank
