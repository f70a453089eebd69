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

#include "mmr/targets.h"

#include <algorithm>

#include "mmr/error.h"

namespace mmr {

std::vector<double> max_tiou_targets(std::span<const Interval> preds,
                                     std::span<const Interval> gts) {
  if (gts.empty()) throw InvalidArgument("max_tiou_targets: gts is empty");
  std::vector<double> out;
  out.reserve(preds.size());
  for (const Interval& p : preds) {
    double best = 0.0;
    for (const Interval& g : gts) best = std::max(best, iou(p, g));
    out.push_back(best);
  }
  return out;
}

Matrix<std::uint8_t> clip_agreement_matrix(std::int64_t num_clips,
                                           double clip_rate,
                                           std::span<const Interval> gts) {
  if (num_clips < 1) throw InvalidArgument("num_clips must be >= 1");
  if (!(clip_rate > 0.0)) throw InvalidArgument("clip rate must be positive");
  const auto n = static_cast<std::size_t>(num_clips);
  Matrix<std::uint8_t> t(n, n, 0);
  std::vector<std::size_t> members;
  for (const Interval& g : gts) {
    members.clear();
    for (std::size_t c = 0; c < n; ++c) {
      const double center = (static_cast<double>(c) + 0.5) / clip_rate;
      if (center >= g.start() && center <= g.end()) members.push_back(c);
    }
    for (std::size_t a : members) {
      for (std::size_t b : members) t(a, b) = 1;
    }
  }
  return t;
}

SupervisionTargets compute_targets(std::span<const Interval> preds,
                                   std::span<const Interval> gts,
                                   std::int64_t num_clips, double clip_rate) {
  return {max_tiou_targets(preds, gts),
          clip_agreement_matrix(num_clips, clip_rate, gts)};
}

}  // namespace mmr
