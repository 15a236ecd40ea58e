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

#include "linkrank/ranker.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>

#include "linkrank/common.hpp"
#include "linkrank/error.hpp"
#include "linkrank/format.hpp"

namespace linkrank {

Scoring Scoring::weighted(double wa, double wd, double wt) {
  Scoring s{Kind::kWeighted, wa, wd, wt};
  s.validate();
  return s;
}

double Scoring::score(const VertexFeatures& f) const {
  switch (kind) {
    case Kind::kAuthority: return f.authority;
    case Kind::kDegreeNorm: return f.degree_norm;
    case Kind::kTransitivity: return f.transitivity;
    case Kind::kWeighted:
      return w_authority * f.authority + w_degree * f.degree_norm +
             w_transitivity * f.transitivity;
  }
  return 0.0;
}

void Scoring::validate() const {
  if (kind != Kind::kWeighted) return;
  const bool finite = std::isfinite(w_authority) && std::isfinite(w_degree) &&
                      std::isfinite(w_transitivity);
  if (!finite || w_authority < 0 || w_degree < 0 || w_transitivity < 0) {
    throw ArgumentError("scoring weights must be finite and non-negative");
  }
  if (w_authority == 0 && w_degree == 0 && w_transitivity == 0) {
    throw ArgumentError("scoring weights must not all be zero");
  }
}

Scoring parse_scoring(std::string_view name) {
  if (name == "authority") return {};
  if (name == "degree_norm" || name == "degree") return {Scoring::Kind::kDegreeNorm};
  if (name == "transitivity") return {Scoring::Kind::kTransitivity};
  // weighted:WA,WD,WT
  constexpr std::string_view prefix = "weighted:";
  if (name.substr(0, prefix.size()) == prefix) {
    auto rest = name.substr(prefix.size());
    double w[3];
    for (int i = 0; i < 3; ++i) {
      const auto comma = rest.find(',');
      const auto token = rest.substr(0, comma);
      w[i] = parse_double(token, "scoring weight");
      if (comma == std::string_view::npos) {
        if (i != 2) throw ArgumentError("weighted scoring needs three weights");
        rest = {};
      } else {
        if (i == 2) throw ArgumentError("weighted scoring needs three weights");
        rest.remove_prefix(comma + 1);
      }
    }
    return Scoring::weighted(w[0], w[1], w[2]);
  }
  throw ArgumentError("unknown scoring '" + std::string(name) + "'");
}

void RankerConfig::validate() const {
  if (!(th >= 0.0 && th < 1.0)) throw ArgumentError("locality threshold must be in [0, 1)");
  if (k == 0) throw ArgumentError("k must be positive");
  scoring.validate();
}

std::vector<Vertex> retrieve_seeds(const Snapshot& snap, Vertex u, double th) {
  snap.check_vertex(u);
  std::vector<Vertex> seeds;
  for (Vertex v : snap.adj(u)) {
    if (jaccard_unchecked(snap, u, v) > th) seeds.push_back(v);
  }
  return seeds;
}

std::vector<Candidate> collect_candidates(const Snapshot& snap, Vertex u,
                                          std::span<const Vertex> seeds) {
  snap.check_vertex(u);
  std::vector<Vertex> reached;
  for (Vertex s : seeds) {
    snap.check_vertex(s);
    const auto ns = snap.adj(s);
    reached.insert(reached.end(), ns.begin(), ns.end());
  }
  std::sort(reached.begin(), reached.end());
  const auto own = snap.adj(u);
  std::vector<Candidate> out;
  for (std::size_t i = 0; i < reached.size();) {
    std::size_t j = i;
    while (j < reached.size() && reached[j] == reached[i]) ++j;
    const Vertex c = reached[i];
    if (c != u && !std::binary_search(own.begin(), own.end(), c)) {
      out.push_back({c, j - i});
    }
    i = j;
  }
  return out;
}

std::vector<RankedCandidate> rank_candidates(const Snapshot& snap,
                                             const FeatureTable& features, Vertex u,
                                             std::span<const Vertex> seeds,
                                             const RankerConfig& cfg) {
  require_features_match(features, snap);
  const auto candidates = collect_candidates(snap, u, seeds);
  std::vector<RankedCandidate> ranked;
  ranked.reserve(candidates.size());
  for (const auto& c : candidates) {
    ranked.push_back({c.vertex, cfg.scoring.score(features[c.vertex]), c.via_seed_count});
  }
  // Internal order matches external id order, so the index is the tie-breaker.
  const auto better = [](const RankedCandidate& a, const RankedCandidate& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.vertex < b.vertex;
  };
  const std::size_t keep = std::min(cfg.k, ranked.size());
  std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(keep),
                    ranked.end(), better);
  ranked.resize(keep);
  return ranked;
}

BatchRanking predict_links(const Snapshot& snap, const FeatureTable& features,
                           std::span<const VertexId> users, const RankerConfig& cfg,
                           unsigned workers) {
  cfg.validate();
  require_features_match(features, snap);

  std::vector<VertexId> ids(users.begin(), users.end());
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

  std::vector<std::optional<UserRanking>> results(ids.size());
  parallel_for(ids.size(), workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      if (!snap.index().contains(ids[i])) continue;
      const Vertex u = snap.vertex(ids[i]);
      UserRanking r;
      const auto seeds = retrieve_seeds(snap, u, cfg.th);
      r.seed_count = seeds.size();
      r.candidate_count = collect_candidates(snap, u, seeds).size();
      r.candidates = rank_candidates(snap, features, u, seeds, cfg);
      results[i] = std::move(r);
    }
  });

  BatchRanking batch;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (results[i]) {
      batch.users.emplace(ids[i], std::move(*results[i]));
    } else {
      batch.failed.push_back(ids[i]);
      batch.errors.push_back("unknown vertex " + std::to_string(ids[i]));
    }
  }
  return batch;
}

void write_ranking_csv(const BatchRanking& ranking, const Snapshot& snap,
                       std::ostream& out) {
  out << "user,rank,candidate,score,via_seed_count\n";
  for (const auto& [user, r] : ranking.users) {
    std::size_t rank = 1;
    for (const auto& c : r.candidates) {
      out << user << ',' << rank++ << ',' << snap.id(c.vertex) << ','
          << format_double(c.score) << ',' << c.via_seed_count << '\n';
    }
  }
}

}  // namespace linkrank
