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

#include "linkrank/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "linkrank/common.hpp"
#include "linkrank/error.hpp"

namespace linkrank {

void GenConfig::validate() const {
  if (m_per_step < 1) throw ArgumentError("m_per_step must be at least 1");
  if (n < m_per_step + 1) throw ArgumentError("n must be at least m_per_step + 1");
  if (!(t0_fraction > 0.0 && t0_fraction <= 1.0)) {
    throw ArgumentError("t0_fraction must be in (0, 1]");
  }
  if (!(triad_prob >= 0.0 && triad_prob <= 1.0)) {
    throw ArgumentError("triad_prob must be in [0, 1]");
  }
  if (!(signal.authority_bias >= 0.0) || !(signal.locality_bias >= 0.0)) {
    throw ArgumentError("signal biases must be non-negative");
  }
  if (!(signal.noise >= 0.0 && signal.noise <= 1.0)) {
    throw ArgumentError("noise must be in [0, 1]");
  }
}

namespace {

struct Edge {
  Vertex u;
  Vertex v;
};

class PairSet {
 public:
  explicit PairSet(std::size_t n) : n_(n) {}
  bool insert(Vertex a, Vertex b) { return set_.insert(key(a, b)).second; }
  bool contains(Vertex a, Vertex b) const { return set_.count(key(a, b)) > 0; }

 private:
  std::uint64_t key(Vertex a, Vertex b) const {
    if (a > b) std::swap(a, b);
    return static_cast<std::uint64_t>(a) * n_ + b;
  }
  std::uint64_t n_;
  std::unordered_set<std::uint64_t> set_;
};

std::vector<Edge> grow(const GenConfig& cfg, Rng& rng) {
  const std::size_t m = cfg.m_per_step;
  std::vector<Edge> edges;
  std::vector<std::vector<Vertex>> adj(cfg.n);
  std::vector<Vertex> endpoints;  // each vertex once per incident edge
  const auto link = [&](Vertex a, Vertex b) {
    edges.push_back({a, b});
    adj[a].push_back(b);
    adj[b].push_back(a);
    endpoints.push_back(a);
    endpoints.push_back(b);
  };
  for (Vertex a = 0; a <= m; ++a) {
    for (Vertex b = a + 1; b <= m; ++b) link(a, b);
  }
  std::vector<Vertex> targets;
  for (auto v = static_cast<Vertex>(m + 1); v < cfg.n; ++v) {
    targets.clear();
    const auto taken = [&](Vertex c) {
      return std::find(targets.begin(), targets.end(), c) != targets.end();
    };
    while (targets.size() < m) {
      if (!targets.empty() && cfg.triad_prob > 0.0 && rng.unit() < cfg.triad_prob) {
        std::vector<Vertex> open;
        for (Vertex c : adj[targets.back()]) {
          if (c != v && !taken(c)) open.push_back(c);
        }
        if (!open.empty()) {
          targets.push_back(open[rng.below(open.size())]);
          continue;
        }
      }
      const Vertex c = endpoints[rng.below(endpoints.size())];
      if (!taken(c)) targets.push_back(c);
    }
    for (Vertex c : targets) link(v, c);
  }
  return edges;
}

}  // namespace

GeneratedGraph generate(const GenConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  const auto growth = grow(cfg, rng);
  const std::size_t g = growth.size();
  const auto cut = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::llround(cfg.t0_fraction * static_cast<double>(g))), 1, g);

  GeneratedGraph out;
  out.t0 = static_cast<Timestamp>(cut) - 1;

  // Topology at t0.
  std::vector<std::vector<Vertex>> adj(cfg.n);
  PairSet existing(cfg.n);
  for (std::size_t i = 0; i < g; ++i) {
    existing.insert(growth[i].u, growth[i].v);
    if (i < cut) {
      adj[growth[i].u].push_back(growth[i].v);
      adj[growth[i].v].push_back(growth[i].u);
    }
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());
  std::vector<Vertex> old;
  for (Vertex v = 0; v < cfg.n; ++v) {
    if (!adj[v].empty()) old.push_back(v);
  }

  std::size_t old_pairs_taken = 0;
  {
    std::vector<char> is_old(cfg.n, 0);
    for (Vertex v : old) is_old[v] = 1;
    for (const auto& e : growth) old_pairs_taken += is_old[e.u] && is_old[e.v];
  }
  const double possible = static_cast<double>(old.size()) * (static_cast<double>(old.size()) - 1) / 2;
  if (static_cast<double>(cfg.window_edges) > possible - static_cast<double>(old_pairs_taken)) {
    throw GenerationError("cannot plant " + std::to_string(cfg.window_edges) +
                          " window edges: not enough unlinked pairs among " +
                          std::to_string(old.size()) + " vertices");
  }

  std::vector<double> base(old.size());
  std::vector<double> cumulative(old.size());
  std::vector<std::size_t> slot(cfg.n, 0);
  double total = 0.0;
  for (std::size_t i = 0; i < old.size(); ++i) {
    base[i] = std::pow(1.0 + static_cast<double>(adj[old[i]].size()), cfg.signal.authority_bias);
    total += base[i];
    cumulative[i] = total;
    slot[old[i]] = i;
  }
  const auto draw_weighted = [&]() -> Vertex {
    const double x = rng.unit() * total;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), x);
    if (it == cumulative.end()) --it;
    return old[static_cast<std::size_t>(it - cumulative.begin())];
  };
  const auto linked_at_t0 = [&](Vertex a, Vertex b) {
    return std::binary_search(adj[a].begin(), adj[a].end(), b);
  };

  // Target for source u: weight (1 + deg)^a * (1 + cn)^l over unlinked
  // vertices. Vertices two hops away carry the common-neighbor factor and are
  // sampled explicitly; the rest by rejection from the degree-only weights.
  std::unordered_map<Vertex, std::size_t> common;
  const auto draw_target = [&](Vertex u) -> Vertex {
    if (cfg.signal.locality_bias == 0.0) return draw_weighted();
    common.clear();
    for (Vertex w : adj[u]) {
      for (Vertex x : adj[w]) {
        if (x != u && !linked_at_t0(u, x)) ++common[x];
      }
    }
    std::vector<std::pair<Vertex, std::size_t>> near(common.begin(), common.end());
    std::sort(near.begin(), near.end());
    double near_mass = 0.0;
    double near_base = 0.0;
    std::vector<double> near_cum;
    for (const auto& [x, cn] : near) {
      near_base += base[slot[x]];
      near_mass += base[slot[x]] *
                   std::pow(1.0 + static_cast<double>(cn), cfg.signal.locality_bias);
      near_cum.push_back(near_mass);
    }
    double blocked = base[slot[u]];
    for (Vertex w : adj[u]) blocked += base[slot[w]];
    const double far_mass = std::max(total - near_base - blocked, 0.0);
    if (rng.unit() * (near_mass + far_mass) < near_mass) {
      const double x = rng.unit() * near_mass;
      auto it = std::upper_bound(near_cum.begin(), near_cum.end(), x);
      if (it == near_cum.end()) --it;
      return near[static_cast<std::size_t>(it - near_cum.begin())].first;
    }
    for (int attempt = 0; attempt < 1000; ++attempt) {
      const Vertex v = draw_weighted();
      if (v != u && !linked_at_t0(u, v) && common.count(v) == 0) return v;
    }
    return u;  // rejected by the caller
  };

  std::vector<Edge> planted;
  const std::size_t max_attempts = 1000 * cfg.window_edges + 1000000;
  for (std::size_t attempt = 0; planted.size() < cfg.window_edges; ++attempt) {
    if (attempt >= max_attempts) {
      throw GenerationError("planting window edges did not converge");
    }
    const Vertex u = old[rng.below(old.size())];
    const Vertex v = rng.unit() < cfg.signal.noise ? old[rng.below(old.size())] : draw_target(u);
    if (u == v || existing.contains(u, v)) continue;
    existing.insert(u, v);
    planted.push_back({u, v});
  }

  std::vector<std::pair<std::pair<VertexId, VertexId>, Timestamp>> triples;
  triples.reserve(g + planted.size());
  Timestamp t = 0;
  for (const auto& e : growth) triples.push_back({{e.u, e.v}, t++});
  for (const auto& e : planted) triples.push_back({{e.u, e.v}, t++});
  out.t_end = std::max(out.t0 + 1, t - 1);
  out.graph = TemporalGraph::from_triples(triples);
  return out;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> degree_histogram(const TemporalGraph& g) {
  std::vector<std::uint64_t> links(g.vertex_count(), 0);
  for (const auto& e : g.edges()) {
    ++links[e.u];
    ++links[e.v];
  }
  std::map<std::uint64_t, std::uint64_t> hist;
  for (auto c : links) {
    if (c > 0) ++hist[c];
  }
  return {hist.begin(), hist.end()};
}

std::vector<std::pair<std::int64_t, std::uint64_t>> links_per_step(const TemporalGraph& g,
                                                                  std::int64_t divisor) {
  if (divisor < 1) throw ArgumentError("step divisor must be positive");
  std::map<std::int64_t, std::uint64_t> hist;
  for (const auto& e : g.edges()) ++hist[e.t / divisor];
  return {hist.begin(), hist.end()};
}

}  // namespace linkrank
