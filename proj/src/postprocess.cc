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

#include "mmr/postprocess.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "mmr/error.h"

namespace mmr {

PostProcessConfig PostProcessConfig::for_clip_rate(double clip_rate,
                                                   double clamp_to) {
  PostProcessConfig c;
  c.clip_rate = clip_rate;
  c.min_len = 1.0 / clip_rate;
  c.round_granularity = 1.0 / clip_rate;
  c.clamp_to = clamp_to;
  return c;
}

void PostProcessConfig::validate() const {
  if (!(clip_rate > 0.0) || !std::isfinite(clip_rate)) {
    throw InvalidArgument("clip rate must be positive");
  }
  if (!(round_granularity > 0.0) || !std::isfinite(round_granularity)) {
    throw InvalidArgument("rounding granularity must be positive");
  }
  if (!(clamp_to > 0.0) || !std::isfinite(clamp_to)) {
    throw InvalidArgument("clamp_to must be positive, got " +
                          std::to_string(clamp_to));
  }
  if (!(min_len > 0.0)) throw InvalidArgument("min_len must be positive");
  // A video shorter than min_len is fine: refinement caps min_len at it.
  if (!(std::min(min_len, clamp_to) <= effective_max_len())) {
    throw InvalidArgument("min_len exceeds max_len");
  }
}

double round_to_grid(double t, double granularity) {
  return std::floor(t / granularity + 0.5) * granularity;
}

ScoredInterval refine_window(const RawWindow& window,
                             const PostProcessConfig& config) {
  if (!std::isfinite(window.start) || !std::isfinite(window.end)) {
    throw InvalidArgument("window endpoints must be finite");
  }
  const double len_cap = config.clamp_to;
  const double g = config.round_granularity;
  const auto clamp = [len_cap](double t) { return std::clamp(t, 0.0, len_cap); };
  const auto snap = [&](double t) { return clamp(round_to_grid(t, g)); };

  double s = window.start;
  double e = window.end;
  if (s > e) std::swap(s, e);
  s = snap(clamp(s));
  e = snap(clamp(e));

  // A video shorter than min_len can only be covered whole.
  const double min_len = std::min(config.min_len, len_cap);
  if (e - s < min_len) {
    const double mid = 0.5 * (s + e);
    s = mid - 0.5 * min_len;
    e = mid + 0.5 * min_len;
    if (s < 0.0) {
      s = 0.0;
      e = min_len;
    } else if (e > len_cap) {
      e = len_cap;
      s = len_cap - min_len;
    }
  }
  const double max_len = config.effective_max_len();
  if (e - s > max_len) {
    const double mid = 0.5 * (s + e);
    s = mid - 0.5 * max_len;
    e = mid + 0.5 * max_len;
  }
  s = snap(s);
  e = snap(e);
  return ScoredInterval(Interval(s, e), window.score);
}

std::vector<ScoredInterval> postprocess(std::span<const RawWindow> windows,
                                        const PostProcessConfig& config) {
  config.validate();
  std::vector<ScoredInterval> out;
  out.reserve(windows.size());
  for (const RawWindow& w : windows) out.push_back(refine_window(w, config));
  return out;
}

ClipRange clip_index_range(const Interval& interval, double clip_rate,
                           std::int64_t num_clips) {
  if (num_clips < 1) throw InvalidArgument("num_clips must be >= 1");
  if (!(clip_rate > 0.0)) throw InvalidArgument("clip rate must be positive");
  const double lo_f = std::floor(interval.start() * clip_rate);
  const double hi_f = std::ceil(interval.end() * clip_rate);
  const auto n = static_cast<double>(num_clips);
  if (lo_f >= n) {
    throw InvalidArgument("interval starting at " +
                          std::to_string(interval.start()) +
                          " s lies outside the clip grid");
  }
  ClipRange r;
  r.lo = static_cast<std::int64_t>(std::max(lo_f, 0.0));
  r.hi = static_cast<std::int64_t>(std::clamp(hi_f, 0.0, n));
  if (r.hi <= r.lo) r.hi = r.lo + 1;
  return r;
}

std::vector<double> blend_scores(std::span<const double> a,
                                 std::span<const double> b, double x) {
  if (a.size() != b.size()) {
    throw InvalidArgument("blend_scores: lengths differ (" +
                          std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()) + ")");
  }
  if (!(x >= 0.0 && x <= 1.0)) {
    throw InvalidArgument("blend weight must lie in [0, 1]");
  }
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!std::isfinite(a[i]) || !std::isfinite(b[i])) {
      throw InvalidArgument("blend_scores: non-finite score");
    }
    out[i] = x * a[i] + (1.0 - x) * b[i];
  }
  return out;
}

std::vector<ScoredInterval> rerank_with_verification(
    std::span<const ScoredInterval> preds, std::span<const double> p,
    double weight) {
  if (preds.size() != p.size()) {
    throw InvalidArgument("rerank_with_verification: " +
                          std::to_string(preds.size()) + " predictions but " +
                          std::to_string(p.size()) + " verification scores");
  }
  std::vector<double> original;
  original.reserve(preds.size());
  for (const ScoredInterval& s : preds) original.push_back(s.score());
  // new = (1 - weight) * original + weight * p
  const std::vector<double> blended = blend_scores(p, original, weight);
  std::vector<ScoredInterval> rescored;
  rescored.reserve(preds.size());
  for (std::size_t i = 0; i < preds.size(); ++i) {
    rescored.emplace_back(preds[i].interval(), blended[i]);
  }
  return ranked(rescored);
}

}  // namespace mmr
