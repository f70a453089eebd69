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

#include "mmr/eval_kernels.h"

#include <algorithm>

namespace mmr {

QueryScores score_query(const QueryInstance& query,
                        const MetricConfig& config) {
  QueryScores s;
  const std::size_t num_gt = query.gts.size();
  s.num_gt = num_gt;

  const std::vector<std::size_t> order = rank_order(query.preds);
  Matrix<double> ious(order.size(), num_gt);
  for (std::size_t r = 0; r < order.size(); ++r) {
    const Interval& p = query.preds[order[r]].interval();
    for (std::size_t j = 0; j < num_gt; ++j) ious(r, j) = iou(p, query.gts[j]);
  }

  s.ap.reserve(config.iou_thresholds.size());
  for (double tau : config.iou_thresholds) {
    s.ap.push_back(
        average_precision(match_ranked(ious, query.gts, tau), config.ap_mode));
  }

  // k_values is strictly increasing, so the top-k prefix only grows.
  const std::size_t num_tau = config.recall_thresholds.size();
  s.miou.assign(config.k_values.size(), 0.0);
  s.recall.assign(config.k_values.size() * num_tau, 0.0);
  std::vector<double> best_per_gt(num_gt, 0.0);
  double best_row_sum = 0.0;
  std::size_t prefix = 0;
  for (std::size_t ki = 0; ki < config.k_values.size(); ++ki) {
    const auto k = static_cast<std::size_t>(config.k_values[ki]);
    for (; prefix < std::min(k, ious.rows()); ++prefix) {
      double row_best = 0.0;
      for (std::size_t j = 0; j < num_gt; ++j) {
        row_best = std::max(row_best, ious(prefix, j));
        best_per_gt[j] = std::max(best_per_gt[j], ious(prefix, j));
      }
      best_row_sum += row_best;
    }
    s.miou[ki] = best_row_sum / static_cast<double>(k);
    for (std::size_t t = 0; t < num_tau; ++t) {
      const double tau = config.recall_thresholds[t];
      const auto hits = std::count_if(best_per_gt.begin(), best_per_gt.end(),
                                      [tau](double v) { return v >= tau; });
      s.recall[ki * num_tau + t] =
          static_cast<double>(hits) / static_cast<double>(num_gt);
    }
  }
  return s;
}

std::vector<QueryScores> score_queries_serial(
    std::span<const QueryInstance> dataset, const MetricConfig& config) {
  std::vector<QueryScores> out;
  out.reserve(dataset.size());
  for (const QueryInstance& q : dataset) out.push_back(score_query(q, config));
  return out;
}

MetricReport reduce_scores(std::span<const QueryScores> scores,
                           const MetricConfig& config) {
  MetricReport r;
  r.iou_thresholds = config.iou_thresholds;
  r.recall_thresholds = config.recall_thresholds;
  r.k_values = config.k_values;
  r.categories = config.categories;
  r.ap_mode = config.ap_mode;
  r.num_queries = scores.size();

  const std::size_t num_iou = config.iou_thresholds.size();
  const std::size_t num_tau = config.recall_thresholds.size();

  // Mean-over-queries AP per threshold, then the mean over thresholds.
  auto gmap_over = [&](auto&& member, std::size_t count,
                       std::vector<double>* per_tau) {
    per_tau->assign(num_iou, 0.0);
    for (std::size_t t = 0; t < num_iou; ++t) {
      double sum = 0.0;
      for (const QueryScores& q : scores) {
        if (member(q)) sum += q.ap[t];
      }
      (*per_tau)[t] = sum / static_cast<double>(count);
    }
    double total = 0.0;
    for (double v : *per_tau) total += v;
    return total / static_cast<double>(num_iou);
  };

  if (!scores.empty()) {
    r.g_map = gmap_over([](const QueryScores&) { return true; }, scores.size(),
                        &r.ap_by_tau);
  } else {
    r.ap_by_tau.assign(num_iou, 0.0);
  }

  for (const GtCategory& c : config.categories) {
    const auto member = [&c](const QueryScores& q) {
      return c.contains(q.num_gt);
    };
    const auto count = static_cast<std::size_t>(
        std::count_if(scores.begin(), scores.end(), member));
    r.query_counts[c.label] = count;
    if (count == 0) continue;
    r.map_by_category[c.label] =
        gmap_over(member, count, &r.category_ap_by_tau[c.label]);
  }

  for (std::size_t ki = 0; ki < config.k_values.size(); ++ki) {
    const int k = config.k_values[ki];
    std::size_t eligible = 0;
    double miou_sum = 0.0;
    std::vector<double> recall_sum(num_tau, 0.0);
    for (const QueryScores& q : scores) {
      if (q.num_gt < static_cast<std::size_t>(k)) continue;
      ++eligible;
      miou_sum += q.miou[ki];
      for (std::size_t t = 0; t < num_tau; ++t) {
        recall_sum[t] += q.recall[ki * num_tau + t];
      }
    }
    r.eligible_query_counts[k] = eligible;
    if (eligible == 0) continue;
    const auto n = static_cast<double>(eligible);
    r.miou_at_k[k] = miou_sum / n;
    std::vector<double>& by_tau = r.mr_at_k_by_tau[k];
    by_tau.resize(num_tau);
    double total = 0.0;
    for (std::size_t t = 0; t < num_tau; ++t) {
      by_tau[t] = recall_sum[t] / n;
      total += by_tau[t];
    }
    r.mr_at_k[k] = total / static_cast<double>(num_tau);
  }
  return r;
}

}  // namespace mmr
