// Copyright 2026 The MMR Eval Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Multi-moment retrieval metrics.
//
// A prediction is a true positive at threshold tau when it claims a still
// unmatched ground-truth moment with IoU >= tau. Predictions are processed
// in rank order and each one takes the unmatched moment with the highest
// IoU (ties: earlier start, earlier end, lower index).
//
//   AP(tau)     mean over queries of the per-query average precision
//   G-mAP       mean of AP(tau) over the IoU threshold set
//   mAP@<cat>   G-mAP restricted to queries of one GT-count category
//   mIoU@k      over queries with >= k moments: mean over the top-k ranked
//               predictions of their best IoU against the moment set
//               (missing predictions count as 0)
//   mR@k        over queries with >= k moments: fraction of moments hit by
//               some top-k prediction with IoU >= tau, then averaged over
//               the recall threshold set
//
// All values are in [0, 1].

#ifndef MMR_METRICS_H_
#define MMR_METRICS_H_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mmr/interval.h"
#include "mmr/matrix.h"
#include "mmr/records.h"

namespace mmr {

enum class ApMode {
  kExactEnvelope,  // all-point interpolation of the precision envelope
  kElevenPoint,    // mean interpolated precision at recall 0, 0.1, ..., 1
};

std::string_view to_string(ApMode mode);
// Accepts "exact-envelope" and "eleven-point".
ApMode parse_ap_mode(std::string_view name);

// Queries whose GT count lies in [min_gt, max_gt].
struct GtCategory {
  std::string label;
  std::size_t min_gt = 1;
  std::size_t max_gt = std::numeric_limits<std::size_t>::max();

  bool contains(std::size_t num_gt) const {
    return num_gt >= min_gt && num_gt <= max_gt;
  }
  friend bool operator==(const GtCategory&, const GtCategory&) = default;
};

// {1} -> "1_tgt", {2} -> "2_tgt", {3, ...} -> "3+tgt".
std::vector<GtCategory> default_categories();

// first, first + step, ..., last. Values are snapped to 9 decimals so that
// e.g. the 0.55 entry is the double nearest to 0.55.
std::vector<double> threshold_range(double first, double last, double step);

struct MetricConfig {
  std::vector<double> iou_thresholds = threshold_range(0.5, 0.95, 0.05);
  std::vector<double> recall_thresholds = threshold_range(0.5, 0.95, 0.05);
  std::vector<int> k_values = {1, 2, 3};
  std::vector<GtCategory> categories = default_categories();
  ApMode ap_mode = ApMode::kExactEnvelope;

  // Throws InvalidArgument: thresholds must be strictly increasing within
  // (0, 1], k values strictly increasing and >= 1, categories disjoint.
  void validate() const;
};

struct PredictionMatch {
  bool tp = false;
  std::optional<std::size_t> gt_index;  // set iff tp
  double iou = 0.0;  // IoU with the matched moment, or best unmatched IoU
  std::size_t pred_index = 0;  // position in the caller's input
};

struct MatchResult {
  std::vector<PredictionMatch> matches;  // ranked order
  std::size_t num_gt = 0;
};

// Ranks `preds` and runs greedy one-to-one matching. Throws
// InvalidArgument when `gts` is empty.
MatchResult match_greedy(std::span<const ScoredInterval> preds,
                         std::span<const Interval> gts, double tau);

// Matching kernel over a precomputed IoU matrix whose rows are already in
// rank order. `gts` supplies the tie-break keys.
MatchResult match_ranked(const Matrix<double>& ious,
                         std::span<const Interval> gts, double tau);

double average_precision(const MatchResult& match,
                         ApMode mode = ApMode::kExactEnvelope);

// Same, from ranked TP flags.
double average_precision(std::span<const bool> tp_flags, std::size_t num_gt,
                         ApMode mode = ApMode::kExactEnvelope);

// One query in evaluation form. `preds` may be in any order.
struct QueryInstance {
  std::int64_t qid = 0;
  std::vector<Interval> gts;
  std::vector<ScoredInterval> preds;
};

struct MetricReport {
  // Echo of the configuration the numbers were computed with.
  std::vector<double> iou_thresholds;
  std::vector<double> recall_thresholds;
  std::vector<int> k_values;
  std::vector<GtCategory> categories;
  ApMode ap_mode = ApMode::kExactEnvelope;

  double g_map = 0.0;
  std::vector<double> ap_by_tau;  // parallel to iou_thresholds

  // Only categories with at least one query appear.
  std::map<std::string, double> map_by_category;
  std::map<std::string, std::vector<double>> category_ap_by_tau;
  std::map<std::string, std::size_t> query_counts;  // every label

  // Only k with at least one eligible query appear.
  std::map<int, double> miou_at_k;
  std::map<int, double> mr_at_k;
  std::map<int, std::vector<double>> mr_at_k_by_tau;  // recall_thresholds
  std::map<int, std::size_t> eligible_query_counts;  // every k

  std::size_t num_queries = 0;
  std::size_t missing_prediction_queries = 0;
  std::size_t reordered_prediction_queries = 0;

  friend bool operator==(const MetricReport&, const MetricReport&) = default;
};

// Dataset-level metrics over queries taken in the given order. Each throws
// InvalidArgument for an empty dataset or a query without moments.
double g_map(std::span<const QueryInstance> dataset,
             const MetricConfig& config);
std::map<std::string, double> map_by_category(
    std::span<const QueryInstance> dataset, const MetricConfig& config);
// nullopt when no query has k or more moments.
std::optional<double> miou_at_k(std::span<const QueryInstance> dataset,
                                int k);
std::optional<double> mr_at_k(std::span<const QueryInstance> dataset, int k,
                              const MetricConfig& config);

// Full report over already-joined queries, given order taken as canonical.
MetricReport evaluate_queries(std::span<const QueryInstance> dataset,
                              const MetricConfig& config, int threads = 1);

struct EvalOptions {
  int threads = 1;
};

// Joins predictions to ground truth by qid (queries are reduced in
// ascending qid order) and computes the full report. A GT query without a
// prediction record is scored as an empty ranked list and counted in
// missing_prediction_queries. Throws InputError for an unknown or
// duplicated qid.
MetricReport evaluate(std::span<const GroundTruthEntry> gt,
                      std::span<const PredictionEntry> preds,
                      const MetricConfig& config,
                      const EvalOptions& options = {});

}  // namespace mmr

#endif  // MMR_METRICS_H_
