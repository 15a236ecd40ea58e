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
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace linkrank {

// External vertex id as it appears in edge-list files.
using VertexId = std::uint64_t;
// Dense internal index. Internal order equals ascending external id order.
using Vertex = std::uint32_t;
using Timestamp = std::int64_t;

// Unordered vertex pair stored with first < second.
struct VertexPair {
  Vertex first;
  Vertex second;

  static VertexPair of(Vertex a, Vertex b) {
    return a < b ? VertexPair{a, b} : VertexPair{b, a};
  }
  friend auto operator<=>(const VertexPair&, const VertexPair&) = default;
};

struct TemporalEdge {
  Vertex u;
  Vertex v;
  Timestamp t;
};

// Bijection between external ids and dense internal indices.
class VertexIndex {
 public:
  VertexIndex() = default;
  // ids need not be sorted or unique.
  explicit VertexIndex(std::vector<VertexId> ids);

  std::size_t size() const { return ids_.size(); }
  VertexId id(Vertex v) const { return ids_[v]; }
  const std::vector<VertexId>& ids() const { return ids_; }

  // Throws LookupError for ids not in the index.
  Vertex at(VertexId id) const;
  bool contains(VertexId id) const;

 private:
  std::vector<VertexId> ids_;  // sorted ascending
};

struct LoadStats {
  std::size_t lines = 0;
  std::size_t edges = 0;
  std::size_t dropped_self_loops = 0;
};

// Timestamped undirected edge multiset.
class TemporalGraph {
 public:
  TemporalGraph() = default;
  TemporalGraph(std::shared_ptr<const VertexIndex> index,
                std::vector<TemporalEdge> edges, LoadStats stats = {});

  // Builds a graph from (u, v, t) triples given with external ids.
  static TemporalGraph from_triples(
      std::span<const std::pair<std::pair<VertexId, VertexId>, Timestamp>>
          triples);

  const VertexIndex& index() const { return *index_; }
  std::shared_ptr<const VertexIndex> shared_index() const { return index_; }
  std::size_t vertex_count() const { return index_->size(); }
  const std::vector<TemporalEdge>& edges() const { return edges_; }
  const LoadStats& stats() const { return stats_; }

  // Number of distinct unordered pairs over all timestamps.
  std::size_t unique_pair_count() const;

 private:
  std::shared_ptr<const VertexIndex> index_ = std::make_shared<VertexIndex>();
  std::vector<TemporalEdge> edges_;
  LoadStats stats_;
};

// Parses "u v t" lines; '#' lines and blank lines are skipped, self-loops are
// dropped and counted. Throws ParseError naming the offending line.
TemporalGraph load_edge_list(std::istream& in);
TemporalGraph load_edge_list_file(const std::string& path);
void write_edge_list(const TemporalGraph& g, std::ostream& out);

// Immutable simple undirected graph in CSR form.
class Snapshot {
 public:
  Snapshot() = default;
  Snapshot(std::shared_ptr<const VertexIndex> index, Timestamp t0,
           std::vector<VertexPair> pairs);

  std::size_t vertex_count() const { return offsets_.size() - 1; }
  std::size_t edge_count() const { return neighbors_.size() / 2; }
  std::size_t max_degree() const { return max_degree_; }
  Timestamp t0() const { return t0_; }

  const VertexIndex& index() const { return *index_; }
  std::shared_ptr<const VertexIndex> shared_index() const { return index_; }
  VertexId id(Vertex v) const { return index_->id(v); }
  Vertex vertex(VertexId id) const { return index_->at(id); }

  // Sorted ascending. Throws LookupError for v out of range.
  std::span<const Vertex> neighbors(Vertex v) const;
  std::size_t degree(Vertex v) const;
  bool has_edge(Vertex u, Vertex v) const;

  // Unchecked variants for inner loops.
  std::span<const Vertex> adj(Vertex v) const {
    return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
  }
  std::size_t deg(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

  const std::vector<std::uint64_t>& offsets() const { return offsets_; }
  const std::vector<Vertex>& neighbor_array() const { return neighbors_; }

  // Edges as unordered pairs, ascending.
  std::vector<VertexPair> edge_pairs() const;

  void check_vertex(Vertex v) const;

 private:
  std::shared_ptr<const VertexIndex> index_ = std::make_shared<VertexIndex>();
  Timestamp t0_ = 0;
  std::vector<std::uint64_t> offsets_{0};
  std::vector<Vertex> neighbors_;
  std::size_t max_degree_ = 0;
};

// Simple graph of all pairs with some edge at t <= t0.
Snapshot snapshot_at(const TemporalGraph& g, Timestamp t0);

// Pairs first linked in (t0, t_end] that are not already in the snapshot.
struct ObservationWindow {
  Timestamp t_start = 0;  // exclusive
  Timestamp t_end = 0;    // inclusive
  std::vector<VertexPair> new_edges;  // sorted, unique

  bool contains(Vertex a, Vertex b) const;
};

ObservationWindow window_edges(const TemporalGraph& g, const Snapshot& snap,
                               Timestamp t0, Timestamp t_end);

}  // namespace linkrank
