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

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "linkrank/error.hpp"
#include "linkrank/graph.hpp"
#include "linkrank/synthgen.hpp"
#include "oracles.hpp"

namespace linkrank {
namespace {

GenConfig config(std::size_t n, std::size_t m, std::size_t w, std::uint64_t seed) {
  GenConfig cfg;
  cfg.n = n;
  cfg.m_per_step = m;
  cfg.window_edges = w;
  cfg.seed = seed;
  return cfg;
}

std::string bytes(const TemporalGraph& g) {
  std::ostringstream out;
  write_edge_list(g, out);
  return out.str();
}

oracle::Adjacency adjacency_of(const Snapshot& snap) {
  oracle::Edges edges;
  for (const auto& p : snap.edge_pairs()) edges.push_back({snap.id(p.first), snap.id(p.second)});
  return oracle::adjacency(edges);
}

TEST(Generate, SmallestTree) {
  const auto gen = generate(config(5, 1, 0, 3));
  EXPECT_EQ(gen.graph.edges().size(), 4u);
  EXPECT_EQ(gen.graph.vertex_count(), 5u);
  for (const auto& e : gen.graph.edges()) EXPECT_LE(e.t, gen.t0);
  const auto snap = snapshot_at(gen.graph, gen.t0);
  EXPECT_EQ(snap.edge_count(), 4u);
  EXPECT_TRUE(oracle::connected(adjacency_of(snap)));
}

TEST(Generate, SameSeedSameBytes) {
  auto cfg = config(400, 2, 300, 17);
  cfg.triad_prob = 0.5;
  cfg.signal = {2.0, 1.0, 0.1};
  EXPECT_EQ(bytes(generate(cfg).graph), bytes(generate(cfg).graph));
  auto other = cfg;
  other.seed = 18;
  EXPECT_NE(bytes(generate(cfg).graph), bytes(generate(other).graph));
}

TEST(Generate, SnapshotConnectedAndWindowFresh) {
  auto cfg = config(600, 2, 500, 5);
  cfg.triad_prob = 0.9;
  cfg.signal = {3.0, 0.0, 0.1};
  const auto gen = generate(cfg);
  const auto snap = snapshot_at(gen.graph, gen.t0);
  EXPECT_TRUE(oracle::connected(adjacency_of(snap)));
  std::set<VertexPair> seen;
  std::size_t after = 0;
  for (const auto& e : gen.graph.edges()) {
    EXPECT_TRUE(seen.insert(VertexPair::of(e.u, e.v)).second);
    if (e.t > gen.t0) {
      ++after;
      EXPECT_GT(snap.deg(e.u), 0u);
      EXPECT_GT(snap.deg(e.v), 0u);
    }
  }
  EXPECT_EQ(after, 500u);
  EXPECT_EQ(window_edges(gen.graph, snap, gen.t0, gen.t_end).new_edges.size(), 500u);
}

// Sum of endpoint degrees at t0 over planted pairs.
std::vector<double> planted_degrees(double authority_bias, std::uint64_t seed) {
  auto cfg = config(3000, 2, 10000, seed);
  cfg.signal = {authority_bias, 0.0, 0.0};
  const auto gen = generate(cfg);
  const auto snap = snapshot_at(gen.graph, gen.t0);
  std::vector<double> out;
  for (const auto& e : gen.graph.edges()) {
    if (e.t > gen.t0) out.push_back(static_cast<double>(snap.deg(e.u) + snap.deg(e.v)));
  }
  return out;
}

TEST(Generate, AuthorityBiasRaisesTargetDegree) {
  const auto biased = planted_degrees(5.0, 21);
  const auto baseline = planted_degrees(0.0, 21);
  ASSERT_EQ(biased.size(), 10000u);
  ASSERT_EQ(baseline.size(), 10000u);
  // Mann-Whitney U with midranks; z from the normal approximation.
  std::vector<std::pair<double, int>> all;
  for (double v : biased) all.push_back({v, 1});
  for (double v : baseline) all.push_back({v, 0});
  std::sort(all.begin(), all.end());
  double rank_sum = 0.0;
  for (std::size_t i = 0; i < all.size();) {
    std::size_t j = i;
    while (j < all.size() && all[j].first == all[i].first) ++j;
    const double mid = (static_cast<double>(i + j) + 1.0) / 2.0;
    for (std::size_t k = i; k < j; ++k) {
      if (all[k].second) rank_sum += mid;
    }
    i = j;
  }
  const double n1 = static_cast<double>(biased.size());
  const double n2 = static_cast<double>(baseline.size());
  const double u = rank_sum - n1 * (n1 + 1) / 2;
  const double z = (u - n1 * n2 / 2) / std::sqrt(n1 * n2 * (n1 + n2 + 1) / 12);
  EXPECT_GT(z, 10.0);
}

TEST(Generate, HeavyTailedDegrees) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto gen = generate(config(1001, 1, 0, seed));
    ASSERT_EQ(gen.graph.edges().size(), 1000u);
    std::vector<std::uint64_t> degrees;
    for (const auto& [value, count] : degree_histogram(gen.graph)) {
      degrees.insert(degrees.end(), count, value);
    }
    std::sort(degrees.begin(), degrees.end());
    const double median = static_cast<double>(degrees[degrees.size() / 2]);
    EXPECT_GT(static_cast<double>(degrees.back()) / median, 10.0) << seed;
  }
}

TEST(Generate, RejectsImpossibleAndInvalid) {
  // A 4-vertex tree at t0 leaves only 3 unlinked pairs.
  EXPECT_THROW(generate(config(4, 1, 4, 1)), GenerationError);
  EXPECT_NO_THROW(generate(config(4, 1, 3, 1)));
  EXPECT_THROW(generate(config(2, 2, 0, 1)), ArgumentError);
  EXPECT_THROW(generate(config(5, 0, 0, 1)), ArgumentError);
  auto cfg = config(10, 1, 0, 1);
  cfg.t0_fraction = 0.0;
  EXPECT_THROW(generate(cfg), ArgumentError);
  cfg = config(10, 1, 0, 1);
  cfg.signal.noise = 1.5;
  EXPECT_THROW(generate(cfg), ArgumentError);
  cfg = config(10, 1, 0, 1);
  cfg.signal.authority_bias = -1;
  EXPECT_THROW(generate(cfg), ArgumentError);
}

TEST(Generate, EarlyCutoffKeepsLaterGrowth) {
  auto cfg = config(200, 2, 0, 4);
  cfg.t0_fraction = 0.5;
  const auto gen = generate(cfg);
  const auto total = gen.graph.edges().size();
  std::size_t before = 0;
  for (const auto& e : gen.graph.edges()) before += e.t <= gen.t0;
  EXPECT_EQ(before, static_cast<std::size_t>(std::lround(0.5 * static_cast<double>(total))));
}

TEST(DegreeHistogram, Star) {
  std::vector<std::pair<std::pair<VertexId, VertexId>, Timestamp>> t;
  for (VertexId leaf = 1; leaf <= 4; ++leaf) t.push_back({{0, leaf}, 1});
  const auto h = degree_histogram(TemporalGraph::from_triples(t));
  using Row = std::pair<std::uint64_t, std::uint64_t>;
  EXPECT_EQ(h, (std::vector<Row>{{1, 4}, {4, 1}}));
  EXPECT_TRUE(degree_histogram(TemporalGraph{}).empty());
}

TEST(LinksPerStep, BucketsByDivisor) {
  std::vector<std::pair<std::pair<VertexId, VertexId>, Timestamp>> t{
      {{1, 2}, 1}, {{2, 3}, 3}, {{3, 4}, 4}, {{4, 5}, 10}};
  const auto g = TemporalGraph::from_triples(t);
  using Row = std::pair<std::int64_t, std::uint64_t>;
  EXPECT_EQ(links_per_step(g, 2), (std::vector<Row>{{0, 1}, {1, 1}, {2, 1}, {5, 1}}));
  EXPECT_EQ(links_per_step(g, 5), (std::vector<Row>{{0, 3}, {2, 1}}));
  EXPECT_THROW(links_per_step(g, 0), ArgumentError);
  std::ostringstream out;
  write_value_count_csv(links_per_step(g, 5), out);
  EXPECT_EQ(out.str(), "value,count\n0,3\n2,1\n");
}

}  // namespace
}  // namespace linkrank
