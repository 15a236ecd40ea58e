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

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "linkrank/features.hpp"
#include "linkrank/graph.hpp"
#include "linkrank/label.hpp"

namespace linkrank {

inline constexpr std::size_t kFeatureCount = 6;

// Column order of the six topology features. Slot 1 is the active user.
inline constexpr std::array<const char*, kFeatureCount> kFeatureNames = {
    "authority1", "authority2", "degree1", "degree2", "transitivity1", "transitivity2"};

struct LabeledInstance {
  VertexId u = 0;
  VertexId v = 0;
  std::array<double, kFeatureCount> features{};
  Label label = Label::kFalse;

  double authority1() const { return features[0]; }
  double authority2() const { return features[1]; }
  double degree1() const { return features[2]; }
  double degree2() const { return features[3]; }
  double transitivity1() const { return features[4]; }
  double transitivity2() const { return features[5]; }

  friend bool operator==(const LabeledInstance&, const LabeledInstance&) = default;
};

enum class DatasetVariant { kClassification, kThreshold };

struct Provenance {
  Timestamp t0 = 0;
  Timestamp t_end = 0;
  DatasetVariant variant = DatasetVariant::kClassification;
  std::optional<double> th;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> balance_seed;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct Dataset {
  std::vector<LabeledInstance> instances;
  Provenance provenance;

  std::size_t size() const { return instances.size(); }
  std::size_t count(Label label) const;

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

struct BuildStats {
  std::size_t active_users = 0;
  std::size_t seed_count = 0;
  std::size_t candidate_count = 0;  // unique candidate pairs
  std::size_t real_count = 0;
  std::size_t false_count = 0;
  std::size_t eligible_window_pairs = 0;  // window pairs between active users

  double recall() const {
    return eligible_window_pairs == 0
               ? 0.0
               : static_cast<double>(real_count) / static_cast<double>(eligible_window_pairs);
  }
};

struct BuiltDataset {
  Dataset dataset;
  BuildStats stats;
};

// Snapshot vertices (degree >= 1 at t0, or listed in the roster) incident to
// at least one window edge. Ascending.
std::vector<Vertex> active_users(const Snapshot& snap, const ObservationWindow& window,
                                 std::span<const Vertex> roster = {});

// Real instances are window pairs between active users; false instances are
// up to neg_cap_per_user sampled non-edges from each active user to other
// active users.
BuiltDataset build_classification_dataset(const Snapshot& snap,
                                          const ObservationWindow& window,
                                          const FeatureTable& features,
                                          std::size_t neg_cap_per_user,
                                          std::uint64_t seed,
                                          std::span<const Vertex> roster = {});

// Candidates of each active user from threshold-gated seeds, labeled by
// membership in the window. The querying user takes slot 1; a pair reached
// from both endpoints puts the smaller external id in slot 1.
BuiltDataset build_threshold_dataset(const Snapshot& snap, const ObservationWindow& window,
                                     const FeatureTable& features, double th,
                                     std::uint64_t seed,
                                     std::span<const Vertex> roster = {},
                                     unsigned workers = 1);

// Undersamples the majority class to the minority size, then shuffles.
Dataset balance(const Dataset& ds, std::uint64_t seed);

void write_dataset(const Dataset& ds, std::ostream& out);
Dataset read_dataset(std::istream& in);

std::string variant_name(DatasetVariant v);

}  // namespace linkrank
