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

#include "linkrank/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string_view>

#include "linkrank/common.hpp"
#include "linkrank/error.hpp"
#include "linkrank/format.hpp"
#include "linkrank/ranker.hpp"

namespace linkrank {

std::size_t Dataset::count(Label label) const {
  return static_cast<std::size_t>(std::count_if(
      instances.begin(), instances.end(),
      [label](const LabeledInstance& x) { return x.label == label; }));
}

std::string variant_name(DatasetVariant v) {
  return v == DatasetVariant::kThreshold ? "threshold" : "classification";
}

namespace {

LabeledInstance make_instance(const Snapshot& snap, const FeatureTable& features,
                              Vertex first, Vertex second, Label label) {
  const auto& a = features[first];
  const auto& b = features[second];
  LabeledInstance x;
  x.u = snap.id(first);
  x.v = snap.id(second);
  x.features = {a.authority, b.authority, a.degree_norm,
                b.degree_norm, a.transitivity, b.transitivity};
  x.label = label;
  return x;
}

std::vector<char> active_mask(const Snapshot& snap, const std::vector<Vertex>& active) {
  std::vector<char> mask(snap.vertex_count(), 0);
  for (Vertex v : active) mask[v] = 1;
  return mask;
}

// Window partners of every vertex, ascending.
std::vector<std::vector<Vertex>> window_partners(const Snapshot& snap,
                                                 const ObservationWindow& window) {
  std::vector<std::vector<Vertex>> partners(snap.vertex_count());
  for (const auto& p : window.new_edges) {
    partners[p.first].push_back(p.second);
    partners[p.second].push_back(p.first);
  }
  for (auto& list : partners) std::sort(list.begin(), list.end());
  return partners;
}

void check_window(const Snapshot& snap, const ObservationWindow& window) {
  for (const auto& p : window.new_edges) {
    if (p.second >= snap.vertex_count()) {
      throw ArgumentError("window references a vertex outside the snapshot");
    }
  }
}

}  // namespace

std::vector<Vertex> active_users(const Snapshot& snap, const ObservationWindow& window,
                                 std::span<const Vertex> roster) {
  check_window(snap, window);
  std::vector<char> old(snap.vertex_count(), 0);
  for (Vertex v = 0; v < snap.vertex_count(); ++v) old[v] = snap.deg(v) > 0;
  for (Vertex v : roster) {
    snap.check_vertex(v);
    old[v] = 1;
  }
  std::vector<Vertex> active;
  for (const auto& p : window.new_edges) {
    if (old[p.first]) active.push_back(p.first);
    if (old[p.second]) active.push_back(p.second);
  }
  std::sort(active.begin(), active.end());
  active.erase(std::unique(active.begin(), active.end()), active.end());
  return active;
}

BuiltDataset build_classification_dataset(const Snapshot& snap,
                                          const ObservationWindow& window,
                                          const FeatureTable& features,
                                          std::size_t neg_cap_per_user,
                                          std::uint64_t seed,
                                          std::span<const Vertex> roster) {
  if (neg_cap_per_user < 1) throw ArgumentError("negative cap must be at least 1");
  require_features_match(features, snap);

  BuiltDataset out;
  out.dataset.provenance = {snap.t0(), window.t_end, DatasetVariant::kClassification,
                            std::nullopt, seed, std::nullopt};
  const auto active = active_users(snap, window, roster);
  const auto is_active = active_mask(snap, active);
  const auto partners = window_partners(snap, window);
  out.stats.active_users = active.size();

  std::vector<std::pair<VertexPair, Label>> pairs;
  for (const auto& p : window.new_edges) {
    if (is_active[p.first] && is_active[p.second]) pairs.push_back({p, Label::kReal});
  }
  out.stats.eligible_window_pairs = pairs.size();
  out.stats.real_count = pairs.size();

  Rng rng(seed);
  std::vector<VertexPair> negatives;
  std::vector<Vertex> pool;
  std::vector<Vertex> picked;
  for (Vertex u : active) {
    const auto excluded = [&](Vertex c) {
      if (c == u) return true;
      const auto nu = snap.adj(u);
      if (std::binary_search(nu.begin(), nu.end(), c)) return true;
      const auto& wp = partners[u];
      return std::binary_search(wp.begin(), wp.end(), c);
    };
    std::size_t blocked = 1;
    for (Vertex c : snap.adj(u)) blocked += is_active[c];
    for (Vertex c : partners[u]) blocked += is_active[c];
    const std::size_t available = active.size() - blocked;
    if (available == 0) continue;
    const std::size_t take = std::min(neg_cap_per_user, available);

    picked.clear();
    if (available <= 2 * take) {
      pool.clear();
      for (Vertex c : active) {
        if (!excluded(c)) pool.push_back(c);
      }
      // Partial Fisher-Yates over the eligible pool.
      for (std::size_t i = 0; i < take; ++i) {
        const std::size_t j = i + rng.below(pool.size() - i);
        std::swap(pool[i], pool[j]);
        picked.push_back(pool[i]);
      }
    } else {
      while (picked.size() < take) {
        const Vertex c = active[rng.below(active.size())];
        if (excluded(c) || std::find(picked.begin(), picked.end(), c) != picked.end()) {
          continue;
        }
        picked.push_back(c);
      }
    }
    for (Vertex c : picked) negatives.push_back(VertexPair::of(u, c));
  }
  std::sort(negatives.begin(), negatives.end());
  negatives.erase(std::unique(negatives.begin(), negatives.end()), negatives.end());
  for (const auto& p : negatives) pairs.push_back({p, Label::kFalse});
  out.stats.false_count = negatives.size();
  out.stats.candidate_count = pairs.size();

  std::sort(pairs.begin(), pairs.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  out.dataset.instances.reserve(pairs.size());
  for (const auto& [p, label] : pairs) {
    // Both endpoints are active: the smaller id takes slot 1.
    out.dataset.instances.push_back(make_instance(snap, features, p.first, p.second, label));
  }
  return out;
}

BuiltDataset build_threshold_dataset(const Snapshot& snap, const ObservationWindow& window,
                                     const FeatureTable& features, double th,
                                     std::uint64_t seed, std::span<const Vertex> roster,
                                     unsigned workers) {
  if (!(th >= 0.0 && th < 1.0)) throw ArgumentError("locality threshold must be in [0, 1)");
  require_features_match(features, snap);

  BuiltDataset out;
  out.dataset.provenance = {snap.t0(), window.t_end, DatasetVariant::kThreshold, th, seed,
                            std::nullopt};
  const auto active = active_users(snap, window, roster);
  const auto is_active = active_mask(snap, active);
  out.stats.active_users = active.size();
  for (const auto& p : window.new_edges) {
    if (is_active[p.first] && is_active[p.second]) ++out.stats.eligible_window_pairs;
  }

  struct PerUser {
    std::size_t seeds = 0;
    std::vector<Vertex> candidates;
  };
  std::vector<PerUser> per_user(active.size());
  parallel_for(active.size(), workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto seeds = retrieve_seeds(snap, active[i], th);
      per_user[i].seeds = seeds.size();
      for (const auto& c : collect_candidates(snap, active[i], seeds)) {
        per_user[i].candidates.push_back(c.vertex);
      }
    }
  });

  // (unordered pair, querying endpoint); merged in a fixed order so the
  // result does not depend on the worker count.
  std::vector<std::pair<VertexPair, Vertex>> found;
  for (std::size_t i = 0; i < active.size(); ++i) {
    out.stats.seed_count += per_user[i].seeds;
    for (Vertex c : per_user[i].candidates) {
      found.push_back({VertexPair::of(active[i], c), active[i]});
    }
  }
  std::sort(found.begin(), found.end());
  for (std::size_t i = 0; i < found.size();) {
    std::size_t j = i;
    while (j < found.size() && found[j].first == found[i].first) ++j;
    const VertexPair p = found[i].first;
    Vertex first = found[i].second;
    if (j - i > 1) first = p.first;  // reached from both endpoints
    const Vertex second = first == p.first ? p.second : p.first;
    const Label label = window.contains(p.first, p.second) ? Label::kReal : Label::kFalse;
    out.dataset.instances.push_back(make_instance(snap, features, first, second, label));
    if (label == Label::kReal) {
      ++out.stats.real_count;
    } else {
      ++out.stats.false_count;
    }
    i = j;
  }
  out.stats.candidate_count = out.dataset.instances.size();
  return out;
}

Dataset balance(const Dataset& ds, std::uint64_t seed) {
  std::vector<std::size_t> real;
  std::vector<std::size_t> fake;
  for (std::size_t i = 0; i < ds.instances.size(); ++i) {
    (ds.instances[i].label == Label::kReal ? real : fake).push_back(i);
  }
  if (real.empty() || fake.empty()) {
    throw BalanceError("cannot balance: " + std::to_string(real.size()) + " real and " +
                       std::to_string(fake.size()) + " false instances");
  }
  Rng rng(seed);
  auto& majority = real.size() > fake.size() ? real : fake;
  const std::size_t target = std::min(real.size(), fake.size());
  // Partial Fisher-Yates: the first `target` entries are a uniform sample.
  for (std::size_t i = 0; i < target; ++i) {
    std::swap(majority[i], majority[i + rng.below(majority.size() - i)]);
  }
  majority.resize(target);

  std::vector<std::size_t> keep = real;
  keep.insert(keep.end(), fake.begin(), fake.end());
  std::sort(keep.begin(), keep.end());
  rng.shuffle(keep);

  Dataset out;
  out.provenance = ds.provenance;
  out.provenance.balance_seed = seed;
  out.instances.reserve(keep.size());
  for (std::size_t i : keep) out.instances.push_back(ds.instances[i]);
  return out;
}

void write_dataset(const Dataset& ds, std::ostream& out) {
  const auto& p = ds.provenance;
  out << "# t0=" << p.t0 << " t_end=" << p.t_end << " variant=" << variant_name(p.variant)
      << " th=" << (p.th ? format_double(*p.th) : std::string("na")) << " seed=" << p.seed;
  if (p.balance_seed) out << " balance_seed=" << *p.balance_seed;
  out << '\n';
  out << "u,v";
  for (const char* name : kFeatureNames) out << ',' << name;
  out << ",label\n";
  for (const auto& x : ds.instances) {
    out << x.u << ',' << x.v;
    for (double f : x.features) out << ',' << format_double(f);
    out << ',' << label_name(x.label) << '\n';
  }
}

namespace {

template <typename T>
T parse_integer(std::string_view token, const std::string& context) {
  T value{};
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(context + ": malformed integer '" + std::string(token) + "'");
  }
  return value;
}

Provenance parse_provenance(const std::string& line) {
  if (line.rfind("# ", 0) != 0) throw ParseError("row 1: missing provenance line");
  std::map<std::string, std::string> kv;
  std::istringstream ss(line.substr(2));
  std::string item;
  while (ss >> item) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ParseError("row 1: malformed provenance '" + item + "'");
    kv[item.substr(0, eq)] = item.substr(eq + 1);
  }
  const auto need = [&](const char* key) -> const std::string& {
    auto it = kv.find(key);
    if (it == kv.end()) throw ParseError(std::string("row 1: provenance lacks ") + key);
    return it->second;
  };
  Provenance p;
  p.t0 = parse_integer<Timestamp>(need("t0"), "row 1");
  p.t_end = parse_integer<Timestamp>(need("t_end"), "row 1");
  const auto& variant = need("variant");
  if (variant == "threshold") {
    p.variant = DatasetVariant::kThreshold;
  } else if (variant == "classification") {
    p.variant = DatasetVariant::kClassification;
  } else {
    throw ParseError("row 1: unknown variant '" + variant + "'");
  }
  const auto& th = need("th");
  if (th != "na") p.th = parse_double(th, "row 1");
  p.seed = parse_integer<std::uint64_t>(need("seed"), "row 1");
  if (auto it = kv.find("balance_seed"); it != kv.end()) {
    p.balance_seed = parse_integer<std::uint64_t>(it->second, "row 1");
  }
  return p;
}

}  // namespace

Dataset read_dataset(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("row 1: empty dataset file");
  Dataset ds;
  ds.provenance = parse_provenance(line);

  std::string expected = "u,v";
  for (const char* name : kFeatureNames) expected += std::string(",") + name;
  expected += ",label";
  if (!std::getline(in, line) || line != expected) {
    throw ParseError("row 2: expected header '" + expected + "'");
  }

  std::size_t row = 2;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    const std::string context = "row " + std::to_string(row);
    std::vector<std::string_view> fields;
    std::string_view rest(line);
    while (true) {
      const auto comma = rest.find(',');
      fields.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (fields.size() != kFeatureCount + 3) {
      throw ParseError(context + ": expected " + std::to_string(kFeatureCount + 3) +
                       " fields, got " + std::to_string(fields.size()));
    }
    LabeledInstance x;
    x.u = parse_integer<VertexId>(fields[0], context);
    x.v = parse_integer<VertexId>(fields[1], context);
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
      x.features[f] = parse_double(fields[2 + f], context);
    }
    const auto label = fields[kFeatureCount + 2];
    if (label == "real") {
      x.label = Label::kReal;
    } else if (label == "false") {
      x.label = Label::kFalse;
    } else {
      throw ParseError(context + ": unknown label '" + std::string(label) + "'");
    }
    ds.instances.push_back(x);
  }
  return ds;
}

}  // namespace linkrank
