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

// Temporal interval algebra: IoU, tIoU matrices, coalescing and 1-D NMS.
//
// All arithmetic is plain double precision with exact comparisons. A
// zero-length interval has IoU 0 with everything, itself included.

#ifndef MMR_INTERVAL_H_
#define MMR_INTERVAL_H_

#include <cstddef>
#include <span>
#include <vector>

#include "mmr/matrix.h"

namespace mmr {

// A closed span [start, end] in seconds with 0 <= start <= end, both finite.
class Interval {
 public:
  constexpr Interval() = default;
  // Throws InvalidArgument when the invariant does not hold.
  Interval(double start, double end);

  double start() const { return start_; }
  double end() const { return end_; }
  double length() const { return end_ - start_; }
  double midpoint() const { return 0.5 * (start_ + end_); }

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double start_ = 0.0;
  double end_ = 0.0;
};

// An interval with a finite confidence score.
class ScoredInterval {
 public:
  ScoredInterval() = default;
  // Throws InvalidArgument on a NaN or infinite score.
  ScoredInterval(Interval interval, double score);
  ScoredInterval(double start, double end, double score)
      : ScoredInterval(Interval(start, end), score) {}

  const Interval& interval() const { return interval_; }
  double start() const { return interval_.start(); }
  double end() const { return interval_.end(); }
  double score() const { return score_; }

  friend bool operator==(const ScoredInterval&,
                         const ScoredInterval&) = default;

 private:
  Interval interval_;
  double score_ = 0.0;
};

double intersection_length(const Interval& a, const Interval& b);

double iou(const Interval& a, const Interval& b);

// Entry (i, j) is iou(preds[i], gts[j]). Throws InvalidArgument naming the
// empty side when either input is empty.
Matrix<double> tiou_matrix(std::span<const Interval> preds,
                           std::span<const Interval> gts);

// Sorted, pairwise disjoint, non-touching cover of the input union.
std::vector<Interval> coalesce(std::span<const Interval> spans);

// IoU of two interval sets after coalescing each one: the measure of the
// common part over the measure of the combined union.
double set_iou(std::span<const Interval> a, std::span<const Interval> b);

// True when `a` ranks before `b`: higher score, then earlier start, then
// the smaller input position.
bool ranks_before(const ScoredInterval& a, std::size_t a_pos,
                  const ScoredInterval& b, std::size_t b_pos);

// Input positions in ranked order.
std::vector<std::size_t> rank_order(std::span<const ScoredInterval> preds);

std::vector<ScoredInterval> ranked(std::span<const ScoredInterval> preds);

// Greedy suppression: repeatedly keeps the best-ranked remaining window and
// drops every remaining window whose IoU with it is strictly above
// `threshold`. Kept windows come back in ranked order. Throws
// InvalidArgument unless 0 < threshold <= 1.
std::vector<ScoredInterval> nms(std::span<const ScoredInterval> preds,
                                double threshold);

// Same selection as nms(), returned as input positions.
std::vector<std::size_t> nms_keep(std::span<const ScoredInterval> preds,
                                  double threshold);

}  // namespace mmr

#endif  // MMR_INTERVAL_H_
