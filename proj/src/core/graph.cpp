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

#include "linkrank/graph.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "linkrank/error.hpp"

namespace linkrank {

VertexIndex::VertexIndex(std::vector<VertexId> ids) : ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
  if (ids_.size() > std::numeric_limits<Vertex>::max()) {
    throw ArgumentError("too many vertices for 32-bit internal indices");
  }
}

Vertex VertexIndex::at(VertexId id) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) {
    throw LookupError("unknown vertex " + std::to_string(id));
  }
  return static_cast<Vertex>(it - ids_.begin());
}

bool VertexIndex::contains(VertexId id) const {
  return std::binary_search(ids_.begin(), ids_.end(), id);
}

TemporalGraph::TemporalGraph(std::shared_ptr<const VertexIndex> index,
                             std::vector<TemporalEdge> edges, LoadStats stats)
    : index_(std::move(index)), edges_(std::move(edges)), stats_(stats) {
  stats_.edges = edges_.size();
}

TemporalGraph TemporalGraph::from_triples(
    std::span<const std::pair<std::pair<VertexId, VertexId>, Timestamp>>
        triples) {
  std::vector<VertexId> ids;
  ids.reserve(triples.size() * 2);
  for (const auto& [uv, t] : triples) {
    ids.push_back(uv.first);
    ids.push_back(uv.second);
  }
  auto index = std::make_shared<const VertexIndex>(std::move(ids));
  std::vector<TemporalEdge> edges;
  LoadStats stats;
  for (const auto& [uv, t] : triples) {
    ++stats.lines;
    if (uv.first == uv.second) {
      ++stats.dropped_self_loops;
      continue;
    }
    edges.push_back({index->at(uv.first), index->at(uv.second), t});
  }
  return TemporalGraph(std::move(index), std::move(edges), stats);
}

std::size_t TemporalGraph::unique_pair_count() const {
  std::vector<VertexPair> pairs;
  pairs.reserve(edges_.size());
  for (const auto& e : edges_) pairs.push_back(VertexPair::of(e.u, e.v));
  std::sort(pairs.begin(), pairs.end());
  return static_cast<std::size_t>(
      std::unique(pairs.begin(), pairs.end()) - pairs.begin());
}

namespace {

std::string_view next_token(std::string_view& rest) {
  const auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f';
  };
  std::size_t i = 0;
  while (i < rest.size() && is_space(rest[i])) ++i;
  std::size_t j = i;
  while (j < rest.size() && !is_space(rest[j])) ++j;
  auto token = rest.substr(i, j - i);
  rest.remove_prefix(j);
  return token;
}

template <typename T>
T parse_field(std::string_view token, const char* what, std::size_t line_no) {
  const auto fail = [&](const std::string& why) {
    throw ParseError("line " + std::to_string(line_no) + ": " + why);
  };
  if (token.empty()) fail(std::string("missing ") + what);
  if (token.front() == '-') {
    fail(std::string("negative ") + what + " '" + std::string(token) + "'");
  }
  T value{};
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    fail(std::string("malformed ") + what + " '" + std::string(token) + "'");
  }
  return value;
}

}  // namespace

TemporalGraph load_edge_list(std::istream& in) {
  std::vector<std::pair<std::pair<VertexId, VertexId>, Timestamp>> triples;
  std::string line;
  std::size_t line_no = 0;
  std::size_t data_lines = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view rest(line);
    auto first = next_token(rest);
    if (first.empty() || first.front() == '#') continue;
    const auto u = parse_field<VertexId>(first, "vertex id", line_no);
    const auto v = parse_field<VertexId>(next_token(rest), "vertex id", line_no);
    const auto t = parse_field<Timestamp>(next_token(rest), "timestamp", line_no);
    if (!next_token(rest).empty()) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected exactly three fields 'u v t'");
    }
    triples.push_back({{u, v}, t});
    ++data_lines;
  }
  auto g = TemporalGraph::from_triples(triples);
  LoadStats stats = g.stats();
  stats.lines = data_lines;
  return TemporalGraph(g.shared_index(), g.edges(), stats);
}

TemporalGraph load_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open edge list '" + path + "'");
  return load_edge_list(in);
}

void write_edge_list(const TemporalGraph& g, std::ostream& out) {
  for (const auto& e : g.edges()) {
    out << g.index().id(e.u) << ' ' << g.index().id(e.v) << ' ' << e.t << '\n';
  }
}

Snapshot::Snapshot(std::shared_ptr<const VertexIndex> index, Timestamp t0,
                   std::vector<VertexPair> pairs)
    : index_(std::move(index)), t0_(t0) {
  const std::size_t n = index_->size();
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

  std::vector<std::uint64_t> degree(n, 0);
  for (const auto& p : pairs) {
    if (p.first == p.second || p.second >= n) {
      throw ArgumentError("snapshot pair is a self-loop or out of range");
    }
    ++degree[p.first];
    ++degree[p.second];
  }
  offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) offsets_[v + 1] = offsets_[v] + degree[v];
  neighbors_.resize(offsets_[n]);
  std::vector<std::uint64_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const auto& p : pairs) neighbors_[cursor[p.first]++] = p.second;
  for (const auto& p : pairs) neighbors_[cursor[p.second]++] = p.first;
  for (std::size_t v = 0; v < n; ++v) {
    std::sort(neighbors_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]),
              neighbors_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]));
    max_degree_ = std::max<std::size_t>(max_degree_, degree[v]);
  }
}

void Snapshot::check_vertex(Vertex v) const {
  if (v >= vertex_count()) {
    throw LookupError("vertex index " + std::to_string(v) + " out of range");
  }
}

std::span<const Vertex> Snapshot::neighbors(Vertex v) const {
  check_vertex(v);
  return adj(v);
}

std::size_t Snapshot::degree(Vertex v) const {
  check_vertex(v);
  return deg(v);
}

bool Snapshot::has_edge(Vertex u, Vertex v) const {
  check_vertex(u);
  check_vertex(v);
  auto a = adj(u);
  auto b = adj(v);
  if (a.size() > b.size()) std::swap(a, b), std::swap(u, v);
  return std::binary_search(b.begin(), b.end(), u);
}

std::vector<VertexPair> Snapshot::edge_pairs() const {
  std::vector<VertexPair> out;
  out.reserve(edge_count());
  for (Vertex u = 0; u < vertex_count(); ++u) {
    for (Vertex w : adj(u)) {
      if (u < w) out.push_back({u, w});
    }
  }
  return out;
}

Snapshot snapshot_at(const TemporalGraph& g, Timestamp t0) {
  std::vector<VertexPair> pairs;
  for (const auto& e : g.edges()) {
    if (e.t <= t0) pairs.push_back(VertexPair::of(e.u, e.v));
  }
  return Snapshot(g.shared_index(), t0, std::move(pairs));
}

bool ObservationWindow::contains(Vertex a, Vertex b) const {
  return std::binary_search(new_edges.begin(), new_edges.end(),
                            VertexPair::of(a, b));
}

ObservationWindow window_edges(const TemporalGraph& g, const Snapshot& snap,
                               Timestamp t0, Timestamp t_end) {
  if (t_end <= t0) {
    throw ArgumentError("window end " + std::to_string(t_end) +
                        " must be after t0 " + std::to_string(t0));
  }
  if (snap.vertex_count() != g.vertex_count()) {
    throw ArgumentError("snapshot does not belong to this graph");
  }
  ObservationWindow w{t0, t_end, {}};
  for (const auto& e : g.edges()) {
    if (e.t <= t0 || e.t > t_end) continue;
    if (snap.has_edge(e.u, e.v)) continue;
    w.new_edges.push_back(VertexPair::of(e.u, e.v));
  }
  std::sort(w.new_edges.begin(), w.new_edges.end());
  w.new_edges.erase(std::unique(w.new_edges.begin(), w.new_edges.end()),
                    w.new_edges.end());
  return w;
}

}  // namespace linkrank
