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
#include <ostream>
#include <utility>
#include <vector>

#include "linkrank/graph.hpp"

namespace linkrank {

struct PlantedSignal {
  double authority_bias = 0.0;  // exponent on (1 + target degree)
  double locality_bias = 0.0;   // exponent on (1 + common neighbors)
  double noise = 0.0;           // share of uniformly chosen pairs
};

struct GenConfig {
  std::size_t n = 1000;
  std::size_t m_per_step = 2;
  // Share of growth edges at or before the cutoff t0. Growth edges after the
  // cutoff mostly attach vertices that did not exist at t0.
  double t0_fraction = 1.0;
  std::size_t window_edges = 0;
  // After each preferential pick, the next link of the arriving vertex goes
  // to a neighbor of the previous target with this probability (triadic
  // closure). 0 is plain preferential attachment.
  double triad_prob = 0.0;
  PlantedSignal signal;
  std::uint64_t seed = 0;

  void validate() const;
};

struct GeneratedGraph {
  TemporalGraph graph;
  Timestamp t0 = 0;
  Timestamp t_end = 0;
};

// Preferential-attachment growth from a clique of m_per_step + 1 vertices,
// one timestamp per edge, followed by planted edges between vertices that
// exist at t0. Vertex ids are 0..n-1.
GeneratedGraph generate(const GenConfig& cfg);

// (links per vertex, vertex count) over vertices with at least one link.
std::vector<std::pair<std::uint64_t, std::uint64_t>> degree_histogram(const TemporalGraph& g);

// (timestamp / divisor, links) for every non-empty step.
std::vector<std::pair<std::int64_t, std::uint64_t>> links_per_step(const TemporalGraph& g,
                                                                  std::int64_t divisor = 1);

template <typename A, typename B>
void write_value_count_csv(const std::vector<std::pair<A, B>>& rows, std::ostream& out) {
  out << "value,count\n";
  for (const auto& [value, count] : rows) out << value << ',' << count << '\n';
}

}  // namespace linkrank
