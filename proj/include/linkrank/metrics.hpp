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
#include <iosfwd>
#include <span>
#include <string>

#include "linkrank/label.hpp"

namespace linkrank {

struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;

  std::size_t total() const { return tp + fp + tn + fn; }
  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

ConfusionCounts confusion(std::span<const Label> predicted, std::span<const Label> actual,
                          Label positive);

// One table row. Degenerate 0/0 ratios are reported as 0.
struct ClassMetrics {
  double tp_rate = 0.0;
  double fp_rate = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f_measure = 0.0;
  double mcc = 0.0;
  double roc_area = 0.0;
  double prc_area = 0.0;
};

ClassMetrics class_metrics(const ConfusionCounts& c);

// Mann-Whitney estimate with mid-ranks for ties. Scores are oriented toward
// `positive`; both classes must be present.
double roc_area(std::span<const double> scores, std::span<const Label> labels,
                Label positive = Label::kReal);

// Average precision over positives in descending score order; tied scores
// form one group evaluated at its end.
double prc_area(std::span<const double> scores, std::span<const Label> labels,
                Label positive = Label::kReal);

struct MetricsReport {
  ClassMetrics real;
  ClassMetrics fake;  // class "false"
  ClassMetrics weighted;
  std::size_t real_support = 0;
  std::size_t false_support = 0;
};

// `scores` are probabilities of class real; the decision threshold is 0.5.
MetricsReport build_report(std::span<const double> scores, std::span<const Label> actual);

inline constexpr const char* kReportHeader =
    "class,tp_rate,fp_rate,precision,recall,f_measure,mcc,roc_area,prc_area";

// Header plus rows real, false, weighted.
void write_report_csv(const MetricsReport& report, std::ostream& out);

// The three rows only, each preceded by `prefix` and a comma; used for
// multi-solver summaries whose header adds a leading column.
void write_report_rows(const MetricsReport& report, std::ostream& out,
                       const std::string& prefix);

}  // namespace linkrank
