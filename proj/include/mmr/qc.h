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

// Annotator agreement check: two annotation passes over the same queries
// are compared by the IoU of their coalesced moment unions.

#ifndef MMR_QC_H_
#define MMR_QC_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mmr/records.h"

namespace mmr {

struct QcEntry {
  std::int64_t qid = 0;
  double overlap = 0.0;
  bool flagged = false;  // overlap < threshold
  friend bool operator==(const QcEntry&, const QcEntry&) = default;
};

struct QcReport {
  double threshold = 0.9;
  std::vector<QcEntry> entries;  // qids present in both, ascending
  std::vector<std::int64_t> flagged;
  std::vector<std::int64_t> missing_in_a;   // in b only
  std::vector<std::int64_t> missing_in_b;   // in a only
  std::optional<double> pass_rate;  // unset when nothing was compared
  friend bool operator==(const QcReport&, const QcReport&) = default;
};

// Mismatched qid sets are reported, never fatal. Throws InvalidArgument
// only for a threshold outside [0, 1] or a qid repeated within one side.
QcReport qc_compare(std::span<const GroundTruthEntry> a,
                    std::span<const GroundTruthEntry> b,
                    double threshold = 0.9);

}  // namespace mmr

#endif  // MMR_QC_H_
