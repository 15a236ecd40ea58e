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

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "linkrank/graph.hpp"

namespace linkrank {

// Local feature: |Γ(u) ∩ Γ(v)| / |Γ(u) ∪ Γ(v)| over raw neighbor sets.
// Two empty neighborhoods give 0.
double jaccard(const Snapshot& snap, Vertex u, Vertex v);

// Unchecked, for inner loops.
double jaccard_unchecked(const Snapshot& snap, Vertex u, Vertex v);

// |Γ(u)| / max degree, or 0 on an edgeless graph.
double degree_coeff(const Snapshot& snap, Vertex u);

// Fraction of neighbor pairs of u that are linked; 0 when degree <= 1.
double transitivity_coeff(const Snapshot& snap, Vertex u);

struct HitsOptions {
  double tol = 1e-10;
  int max_iter = 1000;
};

struct HitsResult {
  std::vector<double> authority;
  std::vector<double> hub;
  int iterations = 0;
  double residual = 0.0;
};

// Alternating hub/authority power iteration from a uniform start with L2
// normalization after each half-step. On an undirected graph the two
// converged vectors can differ by a component along the most negative
// adjacency eigenvector (bipartite graphs); the reported scores are the
// normalized sum of both, which is the principal eigenvector, so
// authority == hub on return.
HitsResult hits(const Snapshot& snap, const HitsOptions& options = {},
                unsigned workers = 1);

struct VertexFeatures {
  double authority = 0.0;
  double hub = 0.0;
  double degree_norm = 0.0;
  double transitivity = 0.0;

  friend bool operator==(const VertexFeatures&, const VertexFeatures&) = default;
};

// Identifies the snapshot a feature table was computed on.
struct SnapshotFingerprint {
  std::size_t vertices = 0;
  std::size_t edges = 0;
  Timestamp t0 = 0;

  static SnapshotFingerprint of(const Snapshot& snap) {
    return {snap.vertex_count(), snap.edge_count(), snap.t0()};
  }
  friend bool operator==(const SnapshotFingerprint&,
                         const SnapshotFingerprint&) = default;
};

struct FeatureTable {
  std::vector<VertexFeatures> rows;
  int hits_iterations = 0;
  double hits_residual = 0.0;
  SnapshotFingerprint source;

  const VertexFeatures& operator[](Vertex v) const { return rows[v]; }
  std::size_t size() const { return rows.size(); }
};

FeatureTable compute_global_features(const Snapshot& snap,
                                     const HitsOptions& options = {},
                                     unsigned workers = 1);

// Throws InvariantError unless the table was computed on this snapshot.
void require_features_match(const FeatureTable& table, const Snapshot& snap);

// CSV "vertex,authority,degree_norm,transitivity" with external ids.
void write_feature_csv(const FeatureTable& table, const Snapshot& snap,
                       std::ostream& out);

enum class FeatureColumn { kAuthority, kHub, kDegreeNorm, kTransitivity };
enum class HistogramTransform { kIdentity, kLog1p };

FeatureColumn parse_feature_column(std::string_view name);
HistogramTransform parse_histogram_transform(std::string_view name);
std::vector<double> column_values(const FeatureTable& table, FeatureColumn column);

// Jaccard coefficient of every snapshot edge, in edge_pairs() order.
std::vector<double> edge_jaccard(const Snapshot& snap);

struct HistogramBin {
  double lower = 0.0;
  std::size_t count = 0;
};

// Equal-width bins over the transformed values; the maximum falls in the last
// bin. All-equal values put everything in the first bin.
std::vector<HistogramBin> histogram(std::span<const double> values, int bins,
                                    HistogramTransform transform =
                                        HistogramTransform::kIdentity);

std::vector<HistogramBin> feature_histogram(
    const FeatureTable& table, FeatureColumn column, int bins,
    HistogramTransform transform = HistogramTransform::kIdentity);

}  // namespace linkrank
