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

#include "mmr/interval.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "mmr/error.h"

namespace mmr {

Interval::Interval(double start, double end) : start_(start), end_(end) {
  if (!std::isfinite(start) || !std::isfinite(end)) {
    throw InvalidArgument("interval endpoints must be finite");
  }
  if (start < 0.0) {
    throw InvalidArgument("interval start must be non-negative, got " +
                          std::to_string(start));
  }
  if (start > end) {
    throw InvalidArgument("interval start " + std::to_string(start) +
                          " exceeds end " + std::to_string(end));
  }
}

ScoredInterval::ScoredInterval(Interval interval, double score)
    : interval_(interval), score_(score) {
  if (!std::isfinite(score)) {
    throw InvalidArgument("score must be finite");
  }
}

double intersection_length(const Interval& a, const Interval& b) {
  const double lo = std::max(a.start(), b.start());
  const double hi = std::min(a.end(), b.end());
  return hi > lo ? hi - lo : 0.0;
}

double iou(const Interval& a, const Interval& b) {
  const double inter = intersection_length(a, b);
  if (inter <= 0.0) return 0.0;
  // Overlapping, so the union is one contiguous span.
  const double uni = std::max(a.end(), b.end()) - std::min(a.start(), b.start());
  return inter / uni;
}

Matrix<double> tiou_matrix(std::span<const Interval> preds,
                           std::span<const Interval> gts) {
  if (preds.empty()) throw InvalidArgument("tiou_matrix: preds is empty");
  if (gts.empty()) throw InvalidArgument("tiou_matrix: gts is empty");
  Matrix<double> m(preds.size(), gts.size());
  for (std::size_t i = 0; i < preds.size(); ++i) {
    for (std::size_t j = 0; j < gts.size(); ++j) {
      m(i, j) = iou(preds[i], gts[j]);
    }
  }
  return m;
}

std::vector<Interval> coalesce(std::span<const Interval> spans) {
  std::vector<Interval> sorted(spans.begin(), spans.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const Interval& a, const Interval& b) {
              return a.start() != b.start() ? a.start() < b.start()
                                            : a.end() < b.end();
            });
  std::vector<Interval> out;
  for (const Interval& s : sorted) {
    if (!out.empty() && s.start() <= out.back().end()) {
      if (s.end() > out.back().end()) {
        out.back() = Interval(out.back().start(), s.end());
      }
    } else {
      out.push_back(s);
    }
  }
  return out;
}

double set_iou(std::span<const Interval> a, std::span<const Interval> b) {
  const std::vector<Interval> ca = coalesce(a);
  const std::vector<Interval> cb = coalesce(b);
  double total_a = 0.0;
  double total_b = 0.0;
  for (const Interval& s : ca) total_a += s.length();
  for (const Interval& s : cb) total_b += s.length();

  double inter = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < ca.size() && j < cb.size()) {
    inter += intersection_length(ca[i], cb[j]);
    if (ca[i].end() < cb[j].end()) {
      ++i;
    } else {
      ++j;
    }
  }
  const double uni = total_a + total_b - inter;
  return uni > 0.0 && inter > 0.0 ? inter / uni : 0.0;
}

bool ranks_before(const ScoredInterval& a, std::size_t a_pos,
                  const ScoredInterval& b, std::size_t b_pos) {
  if (a.score() != b.score()) return a.score() > b.score();
  if (a.start() != b.start()) return a.start() < b.start();
  return a_pos < b_pos;
}

std::vector<std::size_t> rank_order(std::span<const ScoredInterval> preds) {
  std::vector<std::size_t> order(preds.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return ranks_before(preds[x], x, preds[y], y);
  });
  return order;
}

std::vector<ScoredInterval> ranked(std::span<const ScoredInterval> preds) {
  std::vector<ScoredInterval> out;
  out.reserve(preds.size());
  for (std::size_t i : rank_order(preds)) out.push_back(preds[i]);
  return out;
}

std::vector<std::size_t> nms_keep(std::span<const ScoredInterval> preds,
                                  double threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw InvalidArgument("nms threshold must lie in (0, 1]");
  }
  const std::vector<std::size_t> order = rank_order(preds);
  std::vector<bool> dropped(order.size(), false);
  std::vector<std::size_t> keep;
  for (std::size_t a = 0; a < order.size(); ++a) {
    if (dropped[a]) continue;
    const Interval& kept = preds[order[a]].interval();
    keep.push_back(order[a]);
    for (std::size_t b = a + 1; b < order.size(); ++b) {
      if (!dropped[b] && iou(kept, preds[order[b]].interval()) > threshold) {
        dropped[b] = true;
      }
    }
  }
  return keep;
}

std::vector<ScoredInterval> nms(std::span<const ScoredInterval> preds,
                                double threshold) {
  std::vector<ScoredInterval> out;
  for (std::size_t i : nms_keep(preds, threshold)) out.push_back(preds[i]);
  return out;
}

}  // namespace mmr
