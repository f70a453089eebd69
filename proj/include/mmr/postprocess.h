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

// Structured refinement of predicted windows before verification.

#ifndef MMR_POSTPROCESS_H_
#define MMR_POSTPROCESS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mmr/interval.h"

namespace mmr {

// A model output window before validation: endpoints may be reversed,
// negative or past the end of the video. All three values must be finite.
struct RawWindow {
  double start = 0.0;
  double end = 0.0;
  double score = 0.0;
};

struct PostProcessConfig {
  double clip_rate = 0.5;           // clips per second
  double min_len = 2.0;             // seconds
  std::optional<double> max_len;    // seconds; nullopt means clamp_to
  double round_granularity = 2.0;   // seconds
  double clamp_to = 0.0;            // video duration in seconds

  // Defaults tied to one clip: min_len = granularity = 1 / clip_rate.
  static PostProcessConfig for_clip_rate(double clip_rate, double clamp_to);

  double effective_max_len() const { return max_len.value_or(clamp_to); }

  // Throws InvalidArgument on non-positive rate, granularity or clamp_to,
  // or when min(min_len, clamp_to) > max_len.
  void validate() const;
};

// Nearest multiple of `granularity`, halves rounded up.
double round_to_grid(double t, double granularity);

// Applied per window, in order: swap reversed endpoints; clamp into
// [0, clamp_to]; round both endpoints to the grid; widen to min_len around
// the midpoint (shifted inward at the video edges); shrink to max_len
// around the midpoint; round again. Scores and order are unchanged.
//
// Rounding after the length constraints means the final length can miss
// min_len / max_len by less than one granule.
ScoredInterval refine_window(const RawWindow& window,
                             const PostProcessConfig& config);

std::vector<ScoredInterval> postprocess(std::span<const RawWindow> windows,
                                        const PostProcessConfig& config);

// Half-open clip index range [lo, hi) covered by an interval at `clip_rate`.
struct ClipRange {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  friend bool operator==(const ClipRange&, const ClipRange&) = default;
};

// lo = floor(start * r), hi = ceil(end * r), clamped to [0, num_clips] and
// widened so that hi >= lo + 1. Throws InvalidArgument if num_clips < 1,
// clip_rate <= 0 or the interval starts past the last clip.
ClipRange clip_index_range(const Interval& interval, double clip_rate,
                           std::int64_t num_clips);

// x * a + (1 - x) * b, elementwise.
std::vector<double> blend_scores(std::span<const double> a,
                                 std::span<const double> b, double x);

// Replaces each score with (1 - weight) * score + weight * p[i] and re-ranks
// (score descending, then earlier start, then input position).
std::vector<ScoredInterval> rerank_with_verification(
    std::span<const ScoredInterval> preds, std::span<const double> p,
    double weight = 0.5);

}  // namespace mmr

#endif  // MMR_POSTPROCESS_H_
