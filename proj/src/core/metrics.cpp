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

#include "linkrank/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <vector>

#include "linkrank/error.hpp"
#include "linkrank/format.hpp"

namespace linkrank {

namespace {

double ratio(double num, double den) { return den == 0.0 ? 0.0 : num / den; }

void check_lengths(std::size_t a, std::size_t b) {
  if (a != b) {
    throw ArgumentError("length mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

// Scores oriented so that larger means "more positive".
std::vector<double> oriented(std::span<const double> scores, Label positive) {
  std::vector<double> s(scores.begin(), scores.end());
  if (positive == Label::kFalse) {
    for (double& x : s) x = -x;
  }
  return s;
}

}  // namespace

ConfusionCounts confusion(std::span<const Label> predicted, std::span<const Label> actual,
                          Label positive) {
  check_lengths(predicted.size(), actual.size());
  if (predicted.empty()) throw ArgumentError("confusion needs at least one prediction");
  ConfusionCounts c;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    const bool pred_pos = predicted[i] == positive;
    const bool is_pos = actual[i] == positive;
    if (pred_pos && is_pos) {
      ++c.tp;
    } else if (pred_pos) {
      ++c.fp;
    } else if (is_pos) {
      ++c.fn;
    } else {
      ++c.tn;
    }
  }
  return c;
}

ClassMetrics class_metrics(const ConfusionCounts& c) {
  const double tp = static_cast<double>(c.tp);
  const double fp = static_cast<double>(c.fp);
  const double tn = static_cast<double>(c.tn);
  const double fn = static_cast<double>(c.fn);
  ClassMetrics m;
  m.tp_rate = ratio(tp, tp + fn);
  m.recall = m.tp_rate;
  m.fp_rate = ratio(fp, fp + tn);
  m.precision = ratio(tp, tp + fp);
  m.f_measure = ratio(2.0 * m.precision * m.recall, m.precision + m.recall);
  const double den = std::sqrt((tp + fp) * (tp + fn) * (tn + fp) * (tn + fn));
  m.mcc = ratio(tp * tn - fp * fn, den);
  return m;
}

double roc_area(std::span<const double> scores, std::span<const Label> labels,
                Label positive) {
  check_lengths(scores.size(), labels.size());
  const auto s = oriented(scores, positive);
  std::vector<std::size_t> order(s.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return s[a] < s[b]; });

  double rank_sum = 0.0;
  std::size_t n_pos = 0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && s[order[j]] == s[order[i]]) ++j;
    // Ranks i+1 .. j share their mean.
    const double mid = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) {
      if (labels[order[k]] == positive) {
        rank_sum += mid;
        ++n_pos;
      }
    }
    i = j;
  }
  const std::size_t n_neg = s.size() - n_pos;
  if (n_pos == 0 || n_neg == 0) throw MetricError("ROC area needs both classes");
  const double np = static_cast<double>(n_pos);
  const double u = rank_sum - np * (np + 1.0) / 2.0;
  return u / (np * static_cast<double>(n_neg));
}

double prc_area(std::span<const double> scores, std::span<const Label> labels,
                Label positive) {
  check_lengths(scores.size(), labels.size());
  const auto s = oriented(scores, positive);
  std::vector<std::size_t> order(s.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return s[a] > s[b]; });

  double sum = 0.0;
  std::size_t seen = 0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    std::size_t group_pos = 0;
    while (j < order.size() && s[order[j]] == s[order[i]]) {
      group_pos += labels[order[j]] == positive;
      ++j;
    }
    seen = j;
    hits += group_pos;
    sum += static_cast<double>(group_pos) * static_cast<double>(hits) / static_cast<double>(seen);
    i = j;
  }
  if (hits == 0) throw MetricError("PRC area needs at least one positive");
  return sum / static_cast<double>(hits);
}

MetricsReport build_report(std::span<const double> scores, std::span<const Label> actual) {
  check_lengths(scores.size(), actual.size());
  std::vector<Label> predicted(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (!std::isfinite(scores[i])) throw MetricError("prediction score is not finite");
    predicted[i] = scores[i] >= 0.5 ? Label::kReal : Label::kFalse;
  }
  MetricsReport r;
  const auto row = [&](Label positive) {
    auto m = class_metrics(confusion(predicted, actual, positive));
    m.roc_area = roc_area(scores, actual, positive);
    m.prc_area = prc_area(scores, actual, positive);
    return m;
  };
  r.real = row(Label::kReal);
  r.fake = row(Label::kFalse);
  r.real_support = static_cast<std::size_t>(std::count(actual.begin(), actual.end(), Label::kReal));
  r.false_support = actual.size() - r.real_support;

  const double wr = static_cast<double>(r.real_support) / static_cast<double>(actual.size());
  const double wf = 1.0 - wr;
  const auto mix = [&](double ClassMetrics::*field) {
    r.weighted.*field = wr * (r.real.*field) + wf * (r.fake.*field);
  };
  for (auto field : {&ClassMetrics::tp_rate, &ClassMetrics::fp_rate, &ClassMetrics::precision,
                     &ClassMetrics::recall, &ClassMetrics::f_measure, &ClassMetrics::mcc,
                     &ClassMetrics::roc_area, &ClassMetrics::prc_area}) {
    mix(field);
  }
  return r;
}

namespace {

void write_rows(const MetricsReport& report, std::ostream& out, const std::string* prefix) {
  const auto row = [&](const char* name, const ClassMetrics& m) {
    if (prefix) out << *prefix << ',';
    out << name;
    for (double v : {m.tp_rate, m.fp_rate, m.precision, m.recall, m.f_measure, m.mcc,
                     m.roc_area, m.prc_area}) {
      out << ',' << format_double(v);
    }
    out << '\n';
  };
  row("real", report.real);
  row("false", report.fake);
  row("weighted", report.weighted);
}

}  // namespace

void write_report_csv(const MetricsReport& report, std::ostream& out) {
  out << kReportHeader << '\n';
  write_rows(report, out, nullptr);
}

void write_report_rows(const MetricsReport& report, std::ostream& out,
                       const std::string& prefix) {
  write_rows(report, out, &prefix);
}

}  // namespace linkrank
