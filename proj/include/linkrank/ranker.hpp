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
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "linkrank/features.hpp"
#include "linkrank/graph.hpp"

namespace linkrank {

// How a candidate's global feature row is turned into a ranking score.
struct Scoring {
  enum class Kind { kAuthority, kDegreeNorm, kTransitivity, kWeighted };

  Kind kind = Kind::kAuthority;
  double w_authority = 0.0;
  double w_degree = 0.0;
  double w_transitivity = 0.0;

  static Scoring weighted(double wa, double wd, double wt);
  double score(const VertexFeatures& f) const;
  void validate() const;
};

Scoring parse_scoring(std::string_view name);

struct RankerConfig {
  double th = 0.1;  // locality threshold, in [0, 1)
  std::size_t k = 10;
  Scoring scoring;

  void validate() const;
};

struct RankedCandidate {
  Vertex vertex = 0;
  double score = 0.0;
  std::size_t via_seed_count = 0;

  friend bool operator==(const RankedCandidate&, const RankedCandidate&) = default;
};

// Neighbors v of u with jaccard(u, v) > th, ascending.
std::vector<Vertex> retrieve_seeds(const Snapshot& snap, Vertex u, double th);

struct Candidate {
  Vertex vertex = 0;
  std::size_t via_seed_count = 0;
};

// (∪ Γ(seed)) minus u and Γ(u), ascending, with the number of seeds reaching
// each candidate.
std::vector<Candidate> collect_candidates(const Snapshot& snap, Vertex u,
                                          std::span<const Vertex> seeds);

// Scores each candidate once from its feature row, sorts by score descending
// then id ascending, and keeps the first k.
std::vector<RankedCandidate> rank_candidates(const Snapshot& snap,
                                             const FeatureTable& features, Vertex u,
                                             std::span<const Vertex> seeds,
                                             const RankerConfig& cfg);

struct UserRanking {
  std::vector<RankedCandidate> candidates;
  std::size_t seed_count = 0;
  std::size_t candidate_count = 0;  // before top-k truncation
};

struct BatchRanking {
  std::map<VertexId, UserRanking> users;
  std::vector<VertexId> failed;  // ids that could not be resolved
  std::vector<std::string> errors;
};

// Runs retrieval and ranking for every user. Unknown users are reported in
// `failed` and do not abort the batch.
BatchRanking predict_links(const Snapshot& snap, const FeatureTable& features,
                           std::span<const VertexId> users, const RankerConfig& cfg,
                           unsigned workers = 1);

// CSV "user,rank,candidate,score,via_seed_count", users ascending.
void write_ranking_csv(const BatchRanking& ranking, const Snapshot& snap,
                       std::ostream& out);

}  // namespace linkrank
