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

// Supervision targets for a post-verification stage: the best tIoU of each
// refined window against the ground truth, and a clip-by-clip agreement
// matrix derived from the ground-truth moments.

#ifndef MMR_TARGETS_H_
#define MMR_TARGETS_H_

#include <cstdint>
#include <span>
#include <vector>

#include "mmr/interval.h"
#include "mmr/matrix.h"

namespace mmr {

struct SupervisionTargets {
  std::vector<double> max_tiou;   // one per prediction
  Matrix<std::uint8_t> agreement;  // num_clips x num_clips, entries 0/1
};

// Element i is the best IoU of preds[i] over all gts. Throws
// InvalidArgument when gts is empty.
std::vector<double> max_tiou_targets(std::span<const Interval> preds,
                                     std::span<const Interval> gts);

// Clip c spans [c / r, (c + 1) / r) and is inside a moment when its center
// lies in the closed moment. T[a][b] = 1 iff clips a and b are both inside
// at least one common moment.
Matrix<std::uint8_t> clip_agreement_matrix(std::int64_t num_clips,
                                           double clip_rate,
                                           std::span<const Interval> gts);

SupervisionTargets compute_targets(std::span<const Interval> preds,
                                   std::span<const Interval> gts,
                                   std::int64_t num_clips, double clip_rate);

}  // namespace mmr

#endif  // MMR_TARGETS_H_
