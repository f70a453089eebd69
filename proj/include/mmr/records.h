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

#ifndef MMR_RECORDS_H_
#define MMR_RECORDS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "mmr/interval.h"

namespace mmr {

// One annotated query. Every moment lies within [0, duration].
struct GroundTruthEntry {
  std::int64_t qid = 0;
  std::string query;
  std::string vid;
  double duration = 0.0;
  std::vector<Interval> moments;

  friend bool operator==(const GroundTruthEntry&,
                         const GroundTruthEntry&) = default;
};

// Ranked model output for one query.
struct PredictionEntry {
  std::int64_t qid = 0;
  std::vector<ScoredInterval> windows;  // ranked
  bool reordered = false;  // input order differed from the ranked order

  friend bool operator==(const PredictionEntry&,
                         const PredictionEntry&) = default;
};

}  // namespace mmr

#endif  // MMR_RECORDS_H_
