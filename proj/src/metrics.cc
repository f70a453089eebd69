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

#include "mmr/metrics.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <unordered_map>

#include "mmr/error.h"
#include "mmr/eval_kernels.h"

namespace mmr {

std::string_view to_string(ApMode mode) {
  switch (mode) {
    case ApMode::kExactEnvelope:
      return "exact-envelope";
    case ApMode::kElevenPoint:
      return "eleven-point";
  }
  return "unknown";
}

ApMode parse_ap_mode(std::string_view name) {
  if (name == "exact-envelope") return ApMode::kExactEnvelope;
  if (name == "eleven-point") return ApMode::kElevenPoint;
  throw InvalidArgument("unknown AP mode '" + std::string(name) +
                        "' (expected exact-envelope or eleven-point)");
}

std::vector<GtCategory> default_categories() {
  return {{"1_tgt", 1, 1},
          {"2_tgt", 2, 2},
          {"3+tgt", 3, std::numeric_limits<std::size_t>::max()}};
}

std::vector<double> threshold_range(double first, double last, double step) {
  if (!(step > 0.0) || !(last >= first)) {
    throw InvalidArgument("threshold range needs step > 0 and last >= first");
  }
  const auto count = static_cast<long long>(std::floor((last - first) / step + 1e-9)) + 1;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (long long i = 0; i < count; ++i) {
    out.push_back(std::round((first + static_cast<double>(i) * step) * 1e9) / 1e9);
  }
  return out;
}

namespace {

void check_thresholds(const std::vector<double>& values, const char* name) {
  if (values.empty()) {
    throw InvalidArgument(std::string(name) + " must not be empty");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0 && values[i] <= 1.0)) {
      throw InvalidArgument(std::string(name) + " values must lie in (0, 1]");
    }
    if (i > 0 && !(values[i] > values[i - 1])) {
      throw InvalidArgument(std::string(name) + " must be strictly increasing");
    }
  }
}

}  // namespace

void MetricConfig::validate() const {
  check_thresholds(iou_thresholds, "iou_thresholds");
  check_thresholds(recall_thresholds, "recall_thresholds");
  if (k_values.empty()) throw InvalidArgument("k_values must not be empty");
  for (std::size_t i = 0; i < k_values.size(); ++i) {
    if (k_values[i] < 1) throw InvalidArgument("k values must be >= 1");
    if (i > 0 && k_values[i] <= k_values[i - 1]) {
      throw InvalidArgument("k_values must be strictly increasing");
    }
  }
  std::set<std::string> labels;
  for (std::size_t i = 0; i < categories.size(); ++i) {
    const GtCategory& c = categories[i];
    if (c.label.empty() || !labels.insert(c.label).second) {
      throw InvalidArgument("category labels must be unique and non-empty");
    }
    if (c.min_gt < 1 || c.max_gt < c.min_gt) {
      throw InvalidArgument("category '" + c.label + "' has an empty range");
    }
    for (std::size_t j = 0; j < i; ++j) {
      const GtCategory& o = categories[j];
      if (c.min_gt <= o.max_gt && o.min_gt <= c.max_gt) {
        throw InvalidArgument("categories '" + o.label + "' and '" + c.label +
                              "' overlap");
      }
    }
  }
}

MatchResult match_ranked(const Matrix<double>& ious,
                         std::span<const Interval> gts, double tau) {
  MatchResult result;
  result.num_gt = gts.size();
  result.matches.resize(ious.rows());
  std::vector<bool> used(gts.size(), false);
  for (std::size_t i = 0; i < ious.rows(); ++i) {
    PredictionMatch& m = result.matches[i];
    m.pred_index = i;
    std::size_t best = gts.size();
    for (std::size_t j = 0; j < gts.size(); ++j) {
      if (used[j]) continue;
      if (best == gts.size()) {
        best = j;
        continue;
      }
      const double v = ious(i, j);
      const double b = ious(i, best);
      if (v > b || (v == b && (gts[j].start() < gts[best].start() ||
                               (gts[j].start() == gts[best].start() &&
                                gts[j].end() < gts[best].end())))) {
        best = j;
      }
    }
    if (best == gts.size()) continue;  // every moment already claimed
    m.iou = ious(i, best);
    if (m.iou >= tau) {
      m.tp = true;
      m.gt_index = best;
      used[best] = true;
    }
  }
  return result;
}

MatchResult match_greedy(std::span<const ScoredInterval> preds,
                         std::span<const Interval> gts, double tau) {
  if (gts.empty()) throw InvalidArgument("match_greedy: gts is empty");
  const std::vector<std::size_t> order = rank_order(preds);
  Matrix<double> ious(preds.size(), gts.size());
  for (std::size_t r = 0; r < order.size(); ++r) {
    for (std::size_t j = 0; j < gts.size(); ++j) {
      ious(r, j) = iou(preds[order[r]].interval(), gts[j]);
    }
  }
  MatchResult result = match_ranked(ious, gts, tau);
  for (std::size_t r = 0; r < order.size(); ++r) {
    result.matches[r].pred_index = order[r];
  }
  return result;
}

namespace {

template <typename Flags>
double ap_from_flags(const Flags& tp_flags, std::size_t num_gt, ApMode mode) {
  const std::size_t n = tp_flags.size();
  if (n == 0 || num_gt == 0) return 0.0;

  // mrecall = [0, r_1 .. r_n, 1], mprecision = [0, p_1 .. p_n, 0]
  std::vector<double> mrecall(n + 2, 0.0), mprecision(n + 2, 0.0);
  std::size_t tp = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (tp_flags[i]) ++tp;
    mrecall[i + 1] = static_cast<double>(tp) / static_cast<double>(num_gt);
    mprecision[i + 1] = static_cast<double>(tp) / static_cast<double>(i + 1);
  }
  mrecall[n + 1] = 1.0;

  if (mode == ApMode::kElevenPoint) {
    double sum = 0.0;
    for (int t = 0; t <= 10; ++t) {
      const double r = t / 10.0;
      double p = 0.0;
      for (std::size_t i = 1; i <= n; ++i) {
        if (mrecall[i] >= r) p = std::max(p, mprecision[i]);
      }
      sum += p;
    }
    return sum / 11.0;
  }

  for (std::size_t i = n + 1; i-- > 0;) {
    mprecision[i] = std::max(mprecision[i], mprecision[i + 1]);
  }
  double ap = 0.0;
  for (std::size_t i = 1; i < n + 2; ++i) {
    if (mrecall[i] != mrecall[i - 1]) {
      ap += (mrecall[i] - mrecall[i - 1]) * mprecision[i];
    }
  }
  return ap;
}

struct MatchFlags {
  const std::vector<PredictionMatch>& matches;
  std::size_t size() const { return matches.size(); }
  bool operator[](std::size_t i) const { return matches[i].tp; }
};

}  // namespace

double average_precision(std::span<const bool> tp_flags, std::size_t num_gt,
                         ApMode mode) {
  return ap_from_flags(tp_flags, num_gt, mode);
}

double average_precision(const MatchResult& match, ApMode mode) {
  return ap_from_flags(MatchFlags{match.matches}, match.num_gt, mode);
}

MetricReport evaluate_queries(std::span<const QueryInstance> dataset,
                              const MetricConfig& config, int threads) {
  config.validate();
  if (dataset.empty()) throw InvalidArgument("dataset is empty");
  for (const QueryInstance& q : dataset) {
    if (q.gts.empty()) {
      throw InvalidArgument("query " + std::to_string(q.qid) +
                            " has no ground-truth moments");
    }
  }
  const std::vector<QueryScores> scores =
      threads == 1 ? score_queries_serial(dataset, config)
                   : score_queries_parallel(dataset, config, threads);
  MetricReport report = reduce_scores(scores, config);
  return report;
}

double g_map(std::span<const QueryInstance> dataset,
             const MetricConfig& config) {
  return evaluate_queries(dataset, config).g_map;
}

std::map<std::string, double> map_by_category(
    std::span<const QueryInstance> dataset, const MetricConfig& config) {
  return evaluate_queries(dataset, config).map_by_category;
}

std::optional<double> miou_at_k(std::span<const QueryInstance> dataset,
                                int k) {
  MetricConfig config;
  config.k_values = {k};
  const MetricReport report = evaluate_queries(dataset, config);
  const auto it = report.miou_at_k.find(k);
  if (it == report.miou_at_k.end()) return std::nullopt;
  return it->second;
}

std::optional<double> mr_at_k(std::span<const QueryInstance> dataset, int k,
                              const MetricConfig& config) {
  MetricConfig local = config;
  local.k_values = {k};
  const MetricReport report = evaluate_queries(dataset, local);
  const auto it = report.mr_at_k.find(k);
  if (it == report.mr_at_k.end()) return std::nullopt;
  return it->second;
}

MetricReport evaluate(std::span<const GroundTruthEntry> gt,
                      std::span<const PredictionEntry> preds,
                      const MetricConfig& config, const EvalOptions& options) {
  config.validate();
  if (gt.empty()) {
    throw InputError("ground truth", 0, "", "no ground-truth queries");
  }

  std::unordered_map<std::int64_t, const GroundTruthEntry*> gt_by_qid;
  for (const GroundTruthEntry& e : gt) {
    if (!gt_by_qid.emplace(e.qid, &e).second) {
      throw InputError("ground truth", 0, "qid",
                       "duplicate qid " + std::to_string(e.qid));
    }
  }
  std::unordered_map<std::int64_t, const PredictionEntry*> pred_by_qid;
  std::size_t reordered = 0;
  for (const PredictionEntry& p : preds) {
    if (!gt_by_qid.contains(p.qid)) {
      throw InputError("predictions", 0, "qid",
                       "unknown qid " + std::to_string(p.qid));
    }
    if (!pred_by_qid.emplace(p.qid, &p).second) {
      throw InputError("predictions", 0, "qid",
                       "duplicate qid " + std::to_string(p.qid));
    }
    if (p.reordered) ++reordered;
  }

  std::vector<const GroundTruthEntry*> canonical;
  canonical.reserve(gt.size());
  for (const GroundTruthEntry& e : gt) canonical.push_back(&e);
  std::sort(canonical.begin(), canonical.end(),
            [](const GroundTruthEntry* a, const GroundTruthEntry* b) {
              return a->qid < b->qid;
            });

  std::vector<QueryInstance> dataset;
  dataset.reserve(canonical.size());
  std::size_t missing = 0;
  for (const GroundTruthEntry* e : canonical) {
    QueryInstance q;
    q.qid = e->qid;
    q.gts = e->moments;
    const auto it = pred_by_qid.find(e->qid);
    if (it == pred_by_qid.end()) {
      ++missing;
    } else {
      q.preds = it->second->windows;
    }
    dataset.push_back(std::move(q));
  }

  MetricReport report = evaluate_queries(dataset, config, options.threads);
  report.missing_prediction_queries = missing;
  report.reordered_prediction_queries = reordered;
  return report;
}

}  // namespace mmr
