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

#include "linkrank/features.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "linkrank/common.hpp"
#include "linkrank/error.hpp"
#include "linkrank/format.hpp"

namespace linkrank {

namespace {

std::size_t intersection_size(std::span<const Vertex> a, std::span<const Vertex> b) {
  std::size_t count = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

double l2_norm(const std::vector<double>& x) {
  double sum = 0.0;
  for (double v : x) sum += v * v;
  return std::sqrt(sum);
}

void normalize(std::vector<double>& x) {
  const double norm = l2_norm(x);
  if (norm > 0.0) {
    for (double& v : x) v /= norm;
  }
}

// out[u] = Σ_{v ∈ Γ(u)} in[v], summed in ascending neighbor order.
void propagate(const Snapshot& snap, const std::vector<double>& in,
               std::vector<double>& out, unsigned workers) {
  parallel_for(snap.vertex_count(), workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t u = begin; u < end; ++u) {
      double sum = 0.0;
      for (Vertex v : snap.adj(static_cast<Vertex>(u))) sum += in[v];
      out[u] = sum;
    }
  });
}

double transitivity_unchecked(const Snapshot& snap, Vertex u) {
  const auto nu = snap.adj(u);
  const std::size_t d = nu.size();
  if (d <= 1) return 0.0;
  std::size_t links = 0;
  for (Vertex w : nu) {
    for (Vertex x : snap.adj(w)) {
      if (x > w && std::binary_search(nu.begin(), nu.end(), x)) ++links;
    }
  }
  return static_cast<double>(links) / (static_cast<double>(d) * (d - 1) / 2.0);
}

}  // namespace

double jaccard_unchecked(const Snapshot& snap, Vertex u, Vertex v) {
  const auto a = snap.adj(u);
  const auto b = snap.adj(v);
  const std::size_t common = intersection_size(a, b);
  const std::size_t uni = a.size() + b.size() - common;
  if (uni == 0) return 0.0;
  return static_cast<double>(common) / static_cast<double>(uni);
}

double jaccard(const Snapshot& snap, Vertex u, Vertex v) {
  snap.check_vertex(u);
  snap.check_vertex(v);
  return jaccard_unchecked(snap, u, v);
}

double degree_coeff(const Snapshot& snap, Vertex u) {
  snap.check_vertex(u);
  if (snap.max_degree() == 0) return 0.0;
  return static_cast<double>(snap.deg(u)) / static_cast<double>(snap.max_degree());
}

double transitivity_coeff(const Snapshot& snap, Vertex u) {
  snap.check_vertex(u);
  return transitivity_unchecked(snap, u);
}

HitsResult hits(const Snapshot& snap, const HitsOptions& options, unsigned workers) {
  if (!(options.tol > 0.0)) throw ArgumentError("HITS tolerance must be positive");
  if (options.max_iter < 1) throw ArgumentError("HITS max_iter must be at least 1");

  const std::size_t n = snap.vertex_count();
  HitsResult result;
  result.authority.assign(n, 0.0);
  result.hub.assign(n, 0.0);
  if (snap.edge_count() == 0) return result;

  std::vector<double> auth(n, 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<double> hub = auth;
  std::vector<double> next_auth(n);
  std::vector<double> next_hub(n);
  for (int it = 1; it <= options.max_iter; ++it) {
    propagate(snap, hub, next_auth, workers);
    normalize(next_auth);
    propagate(snap, next_auth, next_hub, workers);
    normalize(next_hub);

    double change = 0.0;
    for (std::size_t u = 0; u < n; ++u) {
      const double d = next_auth[u] - auth[u];
      change += d * d;
    }
    auth.swap(next_auth);
    hub.swap(next_hub);
    result.iterations = it;
    result.residual = std::sqrt(change);
    if (result.residual < options.tol) break;
  }

  std::vector<double> merged(n);
  for (std::size_t u = 0; u < n; ++u) merged[u] = auth[u] + hub[u];
  normalize(merged);
  result.authority = merged;
  result.hub = std::move(merged);
  return result;
}

FeatureTable compute_global_features(const Snapshot& snap, const HitsOptions& options,
                                     unsigned workers) {
  auto h = hits(snap, options, workers);
  FeatureTable table;
  table.hits_iterations = h.iterations;
  table.hits_residual = h.residual;
  table.source = SnapshotFingerprint::of(snap);
  table.rows.resize(snap.vertex_count());
  const double max_degree = static_cast<double>(snap.max_degree());
  parallel_for(snap.vertex_count(), workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto u = static_cast<Vertex>(i);
      auto& row = table.rows[i];
      row.authority = h.authority[i];
      row.hub = h.hub[i];
      row.degree_norm = max_degree > 0 ? static_cast<double>(snap.deg(u)) / max_degree : 0.0;
      row.transitivity = transitivity_unchecked(snap, u);
    }
  });
  return table;
}

void require_features_match(const FeatureTable& table, const Snapshot& snap) {
  if (!(table.source == SnapshotFingerprint::of(snap)) ||
      table.size() != snap.vertex_count()) {
    throw InvariantError("feature table was not computed on the t0 snapshot");
  }
}

void write_feature_csv(const FeatureTable& table, const Snapshot& snap,
                       std::ostream& out) {
  require_features_match(table, snap);
  out << "vertex,authority,degree_norm,transitivity\n";
  for (std::size_t v = 0; v < table.size(); ++v) {
    const auto& r = table.rows[v];
    out << snap.id(static_cast<Vertex>(v)) << ',' << format_double(r.authority) << ','
        << format_double(r.degree_norm) << ',' << format_double(r.transitivity) << '\n';
  }
}

FeatureColumn parse_feature_column(std::string_view name) {
  if (name == "authority") return FeatureColumn::kAuthority;
  if (name == "hub") return FeatureColumn::kHub;
  if (name == "degree_norm" || name == "degree") return FeatureColumn::kDegreeNorm;
  if (name == "transitivity") return FeatureColumn::kTransitivity;
  throw ArgumentError("unknown feature column '" + std::string(name) + "'");
}

HistogramTransform parse_histogram_transform(std::string_view name) {
  if (name == "identity" || name == "none") return HistogramTransform::kIdentity;
  if (name == "log1p") return HistogramTransform::kLog1p;
  throw ArgumentError("unknown histogram transform '" + std::string(name) + "'");
}

std::vector<double> column_values(const FeatureTable& table, FeatureColumn column) {
  std::vector<double> out;
  out.reserve(table.size());
  for (const auto& r : table.rows) {
    switch (column) {
      case FeatureColumn::kAuthority: out.push_back(r.authority); break;
      case FeatureColumn::kHub: out.push_back(r.hub); break;
      case FeatureColumn::kDegreeNorm: out.push_back(r.degree_norm); break;
      case FeatureColumn::kTransitivity: out.push_back(r.transitivity); break;
    }
  }
  return out;
}

std::vector<double> edge_jaccard(const Snapshot& snap) {
  std::vector<double> out;
  out.reserve(snap.edge_count());
  for (const auto& p : snap.edge_pairs()) {
    out.push_back(jaccard_unchecked(snap, p.first, p.second));
  }
  return out;
}

std::vector<HistogramBin> histogram(std::span<const double> values, int bins,
                                    HistogramTransform transform) {
  if (bins < 1) throw ArgumentError("histogram needs at least one bin");
  if (values.empty()) return {};
  std::vector<double> x(values.begin(), values.end());
  if (transform == HistogramTransform::kLog1p) {
    for (double& v : x) v = std::log1p(v);
  }
  for (double v : x) {
    if (!std::isfinite(v)) throw ArgumentError("histogram value is not finite");
  }
  const auto [lo_it, hi_it] = std::minmax_element(x.begin(), x.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  const double width = (hi - lo) / bins;
  std::vector<HistogramBin> out(static_cast<std::size_t>(bins));
  for (int b = 0; b < bins; ++b) out[static_cast<std::size_t>(b)].lower = lo + width * b;
  for (double v : x) {
    std::size_t b = 0;
    if (width > 0.0) {
      b = static_cast<std::size_t>(std::floor((v - lo) / width));
      b = std::min<std::size_t>(b, static_cast<std::size_t>(bins) - 1);
    }
    ++out[b].count;
  }
  return out;
}

std::vector<HistogramBin> feature_histogram(const FeatureTable& table,
                                            FeatureColumn column, int bins,
                                            HistogramTransform transform) {
  const auto values = column_values(table, column);
  return histogram(values, bins, transform);
}

}  // namespace linkrank
